import { describe, expect, it } from "vitest";

import fixtures from "./fixtures/service-fixtures.json";
import { buildScene, formatArea } from "./render.js";
import { areaLabels, crossingCount, verdictBadge } from "./gallery.js";
import type { AnalyzePayload, Envelope, SliceResultPayload } from "./types.js";

const eightPlus = (fixtures.eight_plus as Envelope<AnalyzePayload>).result;
const eightMinus = (fixtures.eight_minus as Envelope<AnalyzePayload>).result;
const catReal = (fixtures.cat_realizable as Envelope<AnalyzePayload>).result;
const catImp = (fixtures.cat_impossible as Envelope<AnalyzePayload>).result;
const sum = (fixtures.sum as Envelope<AnalyzePayload>).result;
const nest = (fixtures.nest as Envelope<AnalyzePayload>).result;
const slice = (fixtures.slice_p_eight as Envelope<SliceResultPayload>).result;

describe("gallery payloads", () => {
  it("reports the model shapes' crossing counts", () => {
    expect(crossingCount(eightPlus)).toBe(1);
    expect(crossingCount(eightMinus)).toBe(1);
    expect(crossingCount(catReal)).toBe(3);
    expect(crossingCount(catImp)).toBe(3);
    expect(crossingCount(sum)).toBe(2);
    expect(crossingCount(nest)).toBe(2);
  });

  it("labels areas exactly as the service reports them", () => {
    expect(areaLabels(eightPlus)).toEqual(["1.000", "1.000"]);
    expect(areaLabels(catImp).sort()).toEqual(["1.000", "2.000", "3.000", "4.000"]);
  });

  it("maps verdicts to badges", () => {
    expect(verdictBadge(eightPlus)).toBe("no obstruction");
    expect(verdictBadge(eightMinus)).toBe("not a slice");
    expect(verdictBadge(catImp)).toBe("not a slice");
  });
});

describe("scene building", () => {
  it("cuts the under strand once per crossing on the eight", () => {
    const scene = buildScene(eightPlus.render, 560);
    // One crossing on a single component: the curve is cut into one run
    // with a gap (strokes >= 1); the gap removes points near the crossing.
    expect(scene.strokes.length).toBeGreaterThanOrEqual(1);
    const total = scene.strokes.reduce((n, s) => n + s.points.length, 0);
    const original = eightPlus.render.diagram.components[0].vertices.length;
    expect(total).toBeLessThan(original + 2);
    expect(total).toBeGreaterThan(original * 0.9);
  });

  it("produces one crossing badge per crossing with the sign", () => {
    const scene = buildScene(catReal.render, 560);
    expect(scene.badges.map((b) => b.text)).toEqual(["+", "−", "+"]);
  });

  it("places one label per bounded region at service positions", () => {
    const scene = buildScene(catImp.render, 560);
    expect(scene.labels).toHaveLength(4);
    for (const [i, label] of scene.labels.entries()) {
      expect(label.at).toEqual(catImp.render.faces[i].label_at);
      expect(label.text).toBe(formatArea(catImp.render.faces[i].area));
    }
  });

  it("renders slice payloads with lifted crossing data intact", () => {
    const scene = buildScene(slice, 560);
    expect(scene.badges).toHaveLength(1);
    expect(slice.classification.family).toBe("8+");
    const [l0, l1] = slice.crossings[0].lifts;
    expect(l0).not.toBe(l1);
  });

  it("separate components get separate strokes", () => {
    const scene = buildScene(sum.render, 560);
    const components = new Set(scene.strokes.map((s) => s.component));
    expect(components.size).toBe(2);
  });
});
