// View-model for the pinned-level relation panel: a numeric witness from
// the active family plus the obstruction verdict for the classified ends.

import type {
  RelationVerdictPayload,
  WitnessPayload,
} from "./types.js";

export interface RelationPanel {
  badge: "witnessed" | "obstructed" | "reflexive" | "open" | "unclassified";
  headline: string;
  detail: string;
}

export function describeVerdict(v: RelationVerdictPayload): string {
  switch (v.result) {
    case "obstructed": {
      if (v.capacity !== undefined && v.bottom !== undefined) {
        const rel = v.strict ? "must move strictly" : "is ordered wrongly";
        return `${v.capacity} on ${v.class}: ${v.bottom} vs ${v.top} ${rel}`;
      }
      return v.detail ?? "obstructed";
    }
    case "reflexive-equivalent":
      return "the two ends are equivalent diagrams";
    case "witnessed":
      return "witnessed by a numeric family";
    default:
      return "no obstruction found (not a proof of existence)";
  }
}

export function buildRelationPanel(
  witness: WitnessPayload | null,
  endsVerdict: RelationVerdictPayload | null,
): RelationPanel {
  if (witness) {
    const bot = witness.bottom.classification;
    const top = witness.top.classification;
    const classified = bot.family !== "unclassified" && top.family !== "unclassified";
    if (endsVerdict && endsVerdict.result === "reflexive-equivalent") {
      return {
        badge: "reflexive",
        headline: "equivalent slices",
        detail: describeVerdict(endsVerdict),
      };
    }
    return {
      badge: "witnessed",
      headline: `${bot.label} ⊲ ${top.label}`,
      detail: classified
        ? "same family, two generic levels: a certified strict relation"
        : "witnessed numerically; ends not fully classified",
    };
  }
  if (!endsVerdict) {
    return {
      badge: "unclassified",
      headline: "pin two levels",
      detail: "pin a lower and an upper level to compose a relation query",
    };
  }
  if (endsVerdict.result === "obstructed") {
    return {
      badge: "obstructed",
      headline: "relation obstructed",
      detail: describeVerdict(endsVerdict),
    };
  }
  if (endsVerdict.result === "reflexive-equivalent") {
    return {
      badge: "reflexive",
      headline: "equivalent slices",
      detail: describeVerdict(endsVerdict),
    };
  }
  return {
    badge: "open",
    headline: "no obstruction found",
    detail: describeVerdict(endsVerdict),
  };
}
