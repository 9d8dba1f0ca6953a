import type {
  ChooseResponse,
  CurvePoint,
  DatasetHandle,
  EvaluationResponse,
  Utility,
} from "./types";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function raiseForStatus(res: Response): Promise<void> {
  if (res.ok) return;
  let detail = res.statusText;
  try {
    const body = await res.json();
    if (body && typeof body.detail === "string") detail = body.detail;
    else if (body) detail = JSON.stringify(body.detail ?? body);
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(res.status, detail);
}

export interface ChooseOptionRequest {
  name: string;
  dataset_id?: string;
  curve?: CurvePoint[];
  cost: number;
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  async uploadDataset(csv: string): Promise<DatasetHandle> {
    const res = await fetch(`${this.baseUrl}/api/datasets`, {
      method: "POST",
      headers: { "content-type": "text/csv" },
      body: csv,
    });
    await raiseForStatus(res);
    return res.json();
  }

  async evaluate(datasetId: string, utility: Utility, gridN: number): Promise<EvaluationResponse> {
    const res = await fetch(`${this.baseUrl}/api/evaluate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ dataset_id: datasetId, utility, grid_n: gridN }),
    });
    await raiseForStatus(res);
    return res.json();
  }

  async choose(
    options: ChooseOptionRequest[],
    utility: Utility,
    nCases: number,
  ): Promise<ChooseResponse> {
    const res = await fetch(`${this.baseUrl}/api/choose`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ options, utility, n_cases: nCases }),
    });
    await raiseForStatus(res);
    return res.json();
  }

  async health(): Promise<boolean> {
    try {
      const res = await fetch(`${this.baseUrl}/api/health`);
      return res.ok;
    } catch {
      return false;
    }
  }
}
