import { describe, expect, it } from "vitest";

import {
  DEFAULT_STATE,
  clampLevel,
  decodeState,
  encodeState,
  pinLevel,
} from "./state.js";

describe("view state", () => {
  it("round-trips through the URL fragment", () => {
    let state = { ...DEFAULT_STATE, preset: "P-seq", level: -0.27 };
    state = pinLevel(state, -0.3);
    state = pinLevel(state, -0.27);
    const again = decodeState("#" + encodeState(state));
    expect(again).toEqual(state);
  });

  it("keeps pinned levels ordered", () => {
    let state = pinLevel(DEFAULT_STATE, -0.05);
    state = pinLevel(state, -0.2);
    expect(state.pinned).toEqual([-0.2, -0.05]);
  });

  it("keeps at most two pins, dropping the oldest", () => {
    let state = pinLevel(DEFAULT_STATE, -0.3);
    state = pinLevel(state, -0.2);
    state = pinLevel(state, -0.1);
    expect(state.pinned).toHaveLength(2);
    expect(state.pinned).toEqual([-0.2, -0.1]);
  });

  it("confines the slider to negative levels", () => {
    expect(clampLevel(0.3)).toBeLessThan(0);
    expect(clampLevel(-0.2)).toBe(-0.2);
  });

  it("ignores junk fragments", () => {
    const state = decodeState("#preset=P-eight&level=banana&pins=1,wat");
    expect(state.level).toBe(DEFAULT_STATE.level);
    expect(state.pinned).toEqual([]);
  });
});
