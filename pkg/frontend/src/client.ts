// Thin fetch wrapper over the render service; the panel's only backend.

import type { ProfileDoc, RenderRequestBody, SymptomsDoc } from "./types.js";

export interface RenderResult {
    bytes: Uint8Array;
    contentType: string;
    millis: number;
}

export class ServiceError extends Error {
    constructor(message: string, public readonly status: number, public readonly body: unknown) {
        super(message);
    }
}

async function reject(response: Response): Promise<never> {
    let body: unknown = null;
    try {
        body = await response.json();
    } catch {
        // non-JSON error body
    }
    const detail = body && typeof body === "object" && "error" in body ? ` (${(body as { error: string }).error})` : "";
    throw new ServiceError(`${response.status}${detail}`, response.status, body);
}

export class ServiceClient {
    constructor(private readonly base: string = "") {}

    async symptoms(): Promise<SymptomsDoc> {
        const r = await fetch(`${this.base}/symptoms`);
        if (!r.ok) await reject(r);
        return (await r.json()) as SymptomsDoc;
    }

    async render(body: RenderRequestBody): Promise<RenderResult> {
        const started = performance.now();
        const r = await fetch(`${this.base}/render`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
        });
        if (!r.ok) await reject(r);
        const bytes = new Uint8Array(await r.arrayBuffer());
        return {
            bytes,
            contentType: r.headers.get("content-type") ?? "application/octet-stream",
            millis: performance.now() - started,
        };
    }

    async profileNames(): Promise<string[]> {
        const r = await fetch(`${this.base}/profiles`);
        if (!r.ok) await reject(r);
        return ((await r.json()) as { profiles: string[] }).profiles;
    }

    async getProfile(name: string): Promise<ProfileDoc> {
        const r = await fetch(`${this.base}/profiles/${encodeURIComponent(name)}`);
        if (!r.ok) await reject(r);
        return (await r.json()) as ProfileDoc;
    }

    async putProfile(name: string, doc: ProfileDoc): Promise<void> {
        const r = await fetch(`${this.base}/profiles/${encodeURIComponent(name)}`, {
            method: "PUT",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(doc),
        });
        if (!r.ok) await reject(r);
    }
}
