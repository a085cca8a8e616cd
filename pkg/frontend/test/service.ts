// Spawns the real render service for end-to-end tests.

import { spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export interface RunningService {
    base: string;
    stop(): void;
}

export async function startService(): Promise<RunningService> {
    const port = 8800 + Math.floor(Math.random() * 180);
    const profileDir = mkdtempSync(join(tmpdir(), "visim-panel-test-"));
    const code = [
        "import uvicorn",
        "from visim.service import create_app",
        `uvicorn.run(create_app(${JSON.stringify(profileDir)}), host="127.0.0.1", port=${port}, log_level="error")`,
    ].join("\n");
    const child: ChildProcess = spawn("python3", ["-c", code], { stdio: ["ignore", "ignore", "pipe"] });
    let stderr = "";
    child.stderr?.on("data", (chunk) => (stderr += String(chunk)));

    const base = `http://127.0.0.1:${port}`;
    const deadline = Date.now() + 20_000;
    for (;;) {
        if (child.exitCode !== null) {
            throw new Error(`service exited early (${child.exitCode}): ${stderr}`);
        }
        try {
            const r = await fetch(`${base}/symptoms`);
            if (r.ok) break;
        } catch {
            // not up yet
        }
        if (Date.now() > deadline) {
            child.kill();
            throw new Error(`service did not come up on ${base}: ${stderr}`);
        }
        await new Promise((resolve) => setTimeout(resolve, 150));
    }
    return {
        base,
        stop() {
            child.kill();
        },
    };
}
