import type { ChooseResponse, EvaluationResponse, Utility } from "./types";

export interface OptionState {
  name: string;
  datasetId: string;
  cost: number;
}

export interface ExplorerState {
  utility: Utility;
  options: OptionState[];
  selected: number; // index into options; the panel plots this option's curve
  nCases: number;
  lastEvaluation: EvaluationResponse | null;
  lastChoice: ChooseResponse | null;
}

export const P_MIN = 0.001;
export const P_MAX = 0.999;
export const VALUE_MIN = -1000;
export const VALUE_MAX = 1000;
export const N_CASES_MAX = 10_000_000;

export function initialState(): ExplorerState {
  return {
    utility: { p: 0.02, v_tp: 50, v_fp: -70, v_tn: 0, v_fn: 0 },
    options: [],
    selected: -1,
    nCases: 10_000,
    lastEvaluation: null,
    lastChoice: null,
  };
}

const clamp = (x: number, lo: number, hi: number) => Math.min(hi, Math.max(lo, x));

/** Force slider/box input into the ranges the service accepts. */
export function clampUtility(u: Utility): Utility {
  return {
    p: clamp(u.p, P_MIN, P_MAX),
    v_tp: clamp(u.v_tp, VALUE_MIN, VALUE_MAX),
    v_fp: clamp(u.v_fp, VALUE_MIN, VALUE_MAX),
    v_tn: clamp(u.v_tn, VALUE_MIN, VALUE_MAX),
    v_fn: clamp(u.v_fn, VALUE_MIN, VALUE_MAX),
  };
}

export function clampCases(n: number): number {
  if (!Number.isFinite(n)) return 0;
  return clamp(Math.round(n), 0, N_CASES_MAX);
}

export function utilityIsValid(u: Utility): boolean {
  const values = [u.v_tp, u.v_fp, u.v_tn, u.v_fn];
  return u.p > 0 && u.p < 1 && [u.p, ...values].every(Number.isFinite);
}

/** Gate every request: never call the service with out-of-range inputs. */
export function canRequest(state: ExplorerState): boolean {
  return (
    utilityIsValid(state.utility) &&
    Number.isInteger(state.nCases) &&
    state.nCases >= 0 &&
    state.options.every((o) => o.cost >= 0 && Number.isFinite(o.cost))
  );
}
