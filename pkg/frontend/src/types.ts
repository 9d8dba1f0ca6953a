// Payload shapes of the HTTP API. A null threshold encodes the +infinity
// endpoint (classify nothing positive).

export interface CurvePoint {
  threshold: number | null;
  fpr: number;
  tpr: number;
}

export interface OptimalPoint {
  threshold: number | null;
  fpr: number;
  tpr: number;
  expected_utility_per_case: number;
}

export interface Baseline {
  value: number;
  which: "accept-all" | "reject-all";
}

export interface Indifference {
  slope: number | null;
  intercept: number | null;
}

export interface UtilityField {
  n: number;
  values: number[]; // flat row-major, row 0 at tpr = 0
}

export interface EvaluationResponse {
  curve: CurvePoint[];
  optimal: OptimalPoint;
  baseline: Baseline;
  indifference: Indifference;
  field: UtilityField;
}

export interface ChooseResponse {
  chosen_option: string;
  net_values: Record<string, number>;
}

export interface DatasetSummary {
  positive_count: number;
  negative_count: number;
  score_min: number;
  score_max: number;
}

export interface DatasetHandle {
  id: string;
  summary: DatasetSummary;
}

export interface Utility {
  p: number;
  v_tp: number;
  v_fp: number;
  v_tn: number;
  v_fn: number;
}
