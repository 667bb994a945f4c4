// Thin typed client for the slicelab HTTP API.

import type {
  AnalyzePayload,
  Envelope,
  PresetPayload,
  RelationVerdictPayload,
  SliceResultPayload,
  WitnessPayload,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

async function post<T>(route: string, body: unknown): Promise<Envelope<T>> {
  const response = await fetch(route, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  const data = await response.json();
  if (!response.ok) {
    const message = data?.error?.message ?? response.statusText;
    throw new ServiceError(message, response.status);
  }
  return data as Envelope<T>;
}

export function fetchSlice(
  preset: string,
  level: number,
): Promise<Envelope<SliceResultPayload>> {
  return post("/api/slice", { preset, level });
}

export function fetchAnalyze(catalog: string): Promise<Envelope<AnalyzePayload>> {
  return post("/api/analyze", { catalog });
}

export function fetchRelation(
  bottom: string,
  top: string,
): Promise<Envelope<RelationVerdictPayload>> {
  return post("/api/relation", { bottom, top });
}

export function fetchWitness(
  preset: string,
  bottomLevel: number,
  topLevel: number,
): Promise<Envelope<WitnessPayload>> {
  return post("/api/witness", {
    preset,
    bottom_level: bottomLevel,
    top_level: topLevel,
  });
}

export async function fetchPresets(): Promise<PresetPayload[]> {
  const response = await fetch("/api/presets");
  const data = await response.json();
  if (!response.ok) throw new ServiceError("presets unavailable", response.status);
  return data.result.presets as PresetPayload[];
}
