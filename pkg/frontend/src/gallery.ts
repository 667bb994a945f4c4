// Catalog gallery: the model shapes with their verdict labels.

import type { AnalyzePayload } from "./types.js";

export interface GalleryEntry {
  expression: string;
  title: string;
  note: string;
}

// Seeded with the model shapes and the open-question ones.
export const GALLERY: GalleryEntry[] = [
  { expression: "8+(1)", title: "8+(1)", note: "slice of a single bump family" },
  { expression: "8-(1)", title: "8-(1)", note: "never a slice" },
  { expression: "C(+,-,+;1,2,2)", title: "C(+,-,+;1,2,2)", note: "realizable caterpillar" },
  { expression: "C(-,+,-;3,1,2)", title: "C(-,+,-;3,1,2)", note: "never a slice" },
  { expression: "C(-,-,-;3,1,2)", title: "C(-,-,-;3,1,2)", note: "never a slice" },
  { expression: "C(+,+,+;1,2,2)", title: "C(+,+,+;1,2,2)", note: "open question" },
  { expression: "8+(1) + 8+(2)", title: "8+(1) + 8+(2)", note: "monoid sum" },
  { expression: "nest(8-(1),8+(20))", title: "8-(1) inside 8+(20)", note: "nested pair" },
  { expression: "8-(1) + 8+(2)", title: "8-(1) + 8+(2)", note: "impossible as a connect sum" },
];

export function verdictBadge(payload: AnalyzePayload): string {
  switch (payload.verdict.result) {
    case "impossible":
      return payload.verdict.as_connect_sum
        ? "impossible as connect sum"
        : "not a slice";
    case "non-generic":
      return "non-generic";
    default:
      return "no obstruction";
  }
}

export function crossingCount(payload: AnalyzePayload): number {
  return payload.render.crossings.length;
}

export function areaLabels(payload: AnalyzePayload): string[] {
  return payload.render.faces.map((f) => f.area.toPrecision(4));
}
