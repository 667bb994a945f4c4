// Wire types mirroring the slicelab service JSON. The client never computes
// mathematics; everything displayed comes straight from these payloads.

export interface Envelope<T> {
  engine_version: string;
  input_digest: string;
  result: T;
}

export interface DiagramComponent {
  vertices: [number, number][];
  lift?: number[];
  closed: boolean;
}

export interface DiagramPayload {
  components: DiagramComponent[];
  tolerance: number;
}

export interface StrandRef {
  component: number;
  param: number;
}

export interface CrossingPayload {
  point: [number, number];
  sign: number;
  over_strand: number;
  lifts: [number, number];
  strands: [StrandRef, StrandRef];
}

export interface FaceLabel {
  area: number;
  label_at: [number, number];
}

export interface RenderPayload {
  diagram: DiagramPayload;
  faces: FaceLabel[];
  crossings: CrossingPayload[];
}

export interface Classification {
  label: string;
  family: string;
  areas: number[];
}

export interface SliceResultPayload extends RenderPayload {
  level: number;
  classification: Classification;
  grid: { nx: number; ny: number };
  tolerance: number;
}

export interface CapacityStatusPayload {
  status: "forced-zero" | "forced-value" | "candidates" | "unknown";
  value?: number;
  candidates?: number[];
  wildcard?: boolean;
  chain?: string[];
}

export interface VerdictPayload {
  result: "impossible" | "no-obstruction" | "non-generic";
  witness_class?: string;
  as_connect_sum?: boolean;
}

export interface AnalyzePayload {
  classes: Record<string, unknown>[];
  verdict: VerdictPayload;
  render: RenderPayload;
  catalog_label?: string;
}

export interface RelationVerdictPayload {
  result:
    | "obstructed"
    | "no-obstruction-found"
    | "reflexive-equivalent"
    | "witnessed";
  capacity?: string;
  class?: string;
  bottom?: number;
  top?: number;
  strict?: boolean;
  detail?: string;
}

export interface WitnessPayload {
  family_digest: string;
  bottom: SliceResultPayload;
  top: SliceResultPayload;
}

export interface PresetPayload {
  name: string;
  description: string;
  family: { terms: Record<string, number>[] };
  grid: number;
  level: number;
  sweep: { from: number; to: number; steps: number };
  witness: [number, number];
  expect: { family: string; components: number; crossings: number };
}
