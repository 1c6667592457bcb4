// Typed client for the challenge service REST API.

export interface PanelView {
  svg_url: string;
  png_url: string;
}

export interface CandidateView {
  label: string;
  text: string | null;
  panel_svg_url: string | null;
  panel_png_url: string | null;
}

export interface Challenge {
  token: string;
  family: string;
  prompt: string;
  stimulus: PanelView[];
  candidates: CandidateView[];
  expires_in_s: number;
}

export interface Verdict {
  correct: boolean;
  correct_label: string;
  response_time_s: number;
}

export interface Health {
  status: string;
  families: string[];
}

export type Bin = 'easy' | 'medium' | 'hard';

export interface ChallengeOptions {
  family?: string;
  bin?: Bin;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function parseOrThrow<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let detail = response.statusText;
  try {
    const body = await response.json();
    if (typeof body?.detail === 'string') detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, detail);
}

export class GeogateClient {
  constructor(
    readonly baseUrl: string = '',
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private post<T>(path: string, payload: unknown, headers?: Record<string, string>): Promise<T> {
    return this.fetchImpl(this.baseUrl + path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json', ...headers },
      body: JSON.stringify(payload),
    }).then((r) => parseOrThrow<T>(r));
  }

  health(): Promise<Health> {
    return this.fetchImpl(this.baseUrl + '/v1/health').then((r) => parseOrThrow<Health>(r));
  }

  newChallenge(options: ChallengeOptions = {}): Promise<Challenge> {
    return this.post<Challenge>('/v1/challenge', options);
  }

  answer(token: string, label: string, respondentId = 'web-ui'): Promise<Verdict> {
    return this.post<Verdict>(`/v1/challenge/${token}/answer`, {
      label,
      respondent_id: respondentId,
    });
  }

  panelUrl(relative: string): string {
    return this.baseUrl + relative;
  }

  // -- operator surface, gated by the admin token ---------------------------

  manifests(adminToken: string): Promise<Record<string, unknown>> {
    return this.fetchImpl(this.baseUrl + '/v1/admin/manifests', {
      headers: { 'X-Admin-Token': adminToken },
    }).then((r) => parseOrThrow<Record<string, unknown>>(r));
  }

  stats(adminToken: string): Promise<Record<string, unknown>> {
    return this.fetchImpl(this.baseUrl + '/v1/admin/stats', {
      headers: { 'X-Admin-Token': adminToken },
    }).then((r) => parseOrThrow<Record<string, unknown>>(r));
  }

  preview(adminToken: string, family: string, seed: number, bin?: Bin): Promise<Preview> {
    return this.post<Preview>('/v1/admin/preview', { family, seed, bin }, { 'X-Admin-Token': adminToken });
  }
}

export interface Preview {
  instance_id: string;
  family: string;
  prompt: string;
  params: Record<string, unknown>;
  correct_label: string;
  candidate_labels: string[];
  candidate_texts: (string | null)[];
  stimulus_svg: string[];
  candidate_svg: string[];
  difficulty: Record<string, unknown> | null;
}
