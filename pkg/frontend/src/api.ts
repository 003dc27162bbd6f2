// Typed client for the coaching service HTTP API. The UI does no scoring
// math of its own: every number it displays comes from these responses.

export interface GuideRect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface RoutineInfo {
  name: string;
  template_count: number;
  template_ids: string[];
}

export interface SessionConfig {
  pass_threshold?: number;
  max_attempts_per_template?: number;
}

export interface FrameFeedback {
  alpha: number;
  display_score: number;
  passed: boolean;
  advanced: boolean;
  next_sequence: number | null;
  session_finished: boolean;
  subject_detected: boolean;
}

export interface SessionSummary {
  session_id: string;
  routine: string;
  phase: 'awaiting-background' | 'posing' | 'finished';
  current_sequence: number;
  current_template_id: string | null;
  template_count: number;
  guide: GuideRect;
  best_alphas: Record<string, number>;
}

export interface SessionReport {
  routine: string;
  best_alphas: number[];
  passed: boolean[];
  display_scores: number[];
  game_score: number;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public errorName: string,
    detail: string,
  ) {
    super(`${errorName}: ${detail}`);
  }
}

async function raiseForStatus(resp: Response): Promise<void> {
  if (resp.ok) return;
  let name = 'HttpError';
  let detail = resp.statusText;
  try {
    const body = await resp.json();
    name = body.error ?? name;
    detail = body.detail ?? detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(resp.status, name, detail);
}

export class CoachClient {
  constructor(private baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/$/, '');
  }

  async listRoutines(): Promise<RoutineInfo[]> {
    const resp = await fetch(`${this.baseUrl}/routines`);
    await raiseForStatus(resp);
    return resp.json();
  }

  templateMaskUrl(templateId: string): string {
    return `${this.baseUrl}/templates/${encodeURIComponent(templateId)}/mask.png`;
  }

  async fetchTemplateMask(templateId: string): Promise<Blob> {
    const resp = await fetch(this.templateMaskUrl(templateId));
    await raiseForStatus(resp);
    return resp.blob();
  }

  async createSession(
    routine: string,
    guide: GuideRect,
    config?: SessionConfig,
  ): Promise<string> {
    const resp = await fetch(`${this.baseUrl}/sessions`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ routine, guide, ...(config ? { config } : {}) }),
    });
    await raiseForStatus(resp);
    const body = await resp.json();
    return body.session_id;
  }

  async submitBackground(sessionId: string, png: Blob): Promise<void> {
    const resp = await fetch(`${this.baseUrl}/sessions/${sessionId}/background`, {
      method: 'POST',
      headers: { 'Content-Type': 'image/png' },
      body: png,
    });
    await raiseForStatus(resp);
  }

  async submitFrame(sessionId: string, png: Blob): Promise<FrameFeedback> {
    const resp = await fetch(`${this.baseUrl}/sessions/${sessionId}/frame`, {
      method: 'POST',
      headers: { 'Content-Type': 'image/png' },
      body: png,
    });
    await raiseForStatus(resp);
    return resp.json();
  }

  async getSummary(sessionId: string): Promise<SessionSummary> {
    const resp = await fetch(`${this.baseUrl}/sessions/${sessionId}`);
    await raiseForStatus(resp);
    return resp.json();
  }

  async getReport(sessionId: string): Promise<SessionReport> {
    const resp = await fetch(`${this.baseUrl}/sessions/${sessionId}/report`);
    await raiseForStatus(resp);
    return resp.json();
  }
}
