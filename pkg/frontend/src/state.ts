// View state and its URL-fragment serialisation: reloading a shared link
// reproduces the view exactly.

export interface ViewState {
  preset: string;
  level: number;
  pinned: number[]; // at most two pinned levels, kept sorted ascending
  showAreas: boolean;
  showSigns: boolean;
}

export const DEFAULT_STATE: ViewState = {
  preset: "P-eight",
  level: -0.12,
  pinned: [],
  showAreas: true,
  showSigns: true,
};

export function clampLevel(level: number): number {
  // Levels live strictly below zero.
  return Math.min(level, -1e-4);
}

export function pinLevel(state: ViewState, level: number): ViewState {
  const pinned = [...state.pinned, clampLevel(level)].slice(-2);
  pinned.sort((a, b) => a - b);
  return { ...state, pinned };
}

export function clearPins(state: ViewState): ViewState {
  return { ...state, pinned: [] };
}

export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  params.set("preset", state.preset);
  params.set("level", state.level.toString());
  if (state.pinned.length) params.set("pins", state.pinned.join(","));
  if (!state.showAreas) params.set("areas", "0");
  if (!state.showSigns) params.set("signs", "0");
  return params.toString();
}

export function decodeState(fragment: string): ViewState {
  const params = new URLSearchParams(fragment.replace(/^#/, ""));
  const state: ViewState = { ...DEFAULT_STATE, pinned: [] };
  const preset = params.get("preset");
  if (preset) state.preset = preset;
  const level = Number(params.get("level"));
  if (Number.isFinite(level) && level < 0) state.level = level;
  const pins = params.get("pins");
  if (pins) {
    state.pinned = pins
      .split(",")
      .map(Number)
      .filter((x) => Number.isFinite(x) && x < 0)
      .slice(0, 2)
      .sort((a, b) => a - b);
  }
  if (params.get("areas") === "0") state.showAreas = false;
  if (params.get("signs") === "0") state.showSigns = false;
  return state;
}
