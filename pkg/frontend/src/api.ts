/** Typed client for the search service HTTP API. */

export interface SearchRequest {
  old: string;
  new: string;
  k?: number;
  max_results?: number;
  exhaustive?: boolean;
}

export interface SearchResultItem {
  id: number;
  rank: number;
  distance: number | null;
  old: string[];
  new: string[];
  bindings: Record<string, string>;
}

export interface SearchStats {
  retrieved: number;
  matched: number;
  elapsed_ms: number;
}

export interface SearchResponse {
  results: SearchResultItem[];
  stats: SearchStats;
}

export interface ApiError {
  type: string;
  message: string;
  side?: string;
  line?: number;
  column?: number;
}

export interface HealthResponse {
  status: string;
  corpus: number;
}

/** Raised for non-2xx responses that carry a structured error body. */
export class ServiceError extends Error {
  constructor(public readonly error: ApiError) {
    super(error.message);
  }
}

export async function postSearch(
  baseUrl: string,
  request: SearchRequest,
  signal?: AbortSignal,
): Promise<SearchResponse> {
  const response = await fetch(`${baseUrl}/search`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(request),
    signal,
  });
  const body = await response.json();
  if (!response.ok) {
    throw new ServiceError(
      (body && body.error) ?? { type: "HttpError", message: `HTTP ${response.status}` },
    );
  }
  return body as SearchResponse;
}

export async function getHealth(baseUrl: string): Promise<HealthResponse> {
  const response = await fetch(`${baseUrl}/health`);
  if (!response.ok) {
    throw new ServiceError({ type: "HttpError", message: `HTTP ${response.status}` });
  }
  return (await response.json()) as HealthResponse;
}
