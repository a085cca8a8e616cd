// Wire types for the render service. The panel never hardcodes parameter
// ranges: everything flows from GET /symptoms.

export interface ParamSchema {
    name: string;
    kind: string; // float | int | enum | bool | vec2 (forward compatible)
    min?: number;
    max?: number;
    default: unknown;
    unit?: string;
    choices?: string[];
}

export interface SymptomSchema {
    name: string;
    label: string;
    eye_tracking: boolean;
    temporal: boolean;
    params: ParamSchema[];
    neutral: Record<string, unknown>;
    disclaimer?: string;
}

export interface SymptomsDoc {
    symptoms: SymptomSchema[];
}

export interface ProfileSymptomDoc {
    type: string;
    enabled: boolean;
    params: Record<string, unknown>;
}

export interface ProfileDoc {
    format_version: number;
    name: string;
    seed: number;
    notes: string;
    global_enabled: boolean;
    symptoms: ProfileSymptomDoc[];
}

export interface RenderRequestBody {
    image_b64?: string;
    session?: string;
    profile?: ProfileDoc;
    profile_name?: string;
    gaze: [number, number];
    time: number;
    format?: "png" | "ppm";
}
