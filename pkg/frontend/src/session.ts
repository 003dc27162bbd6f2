// Session flow controller: background capture, then one frame per tick
// against the server's current template until the session finishes.
//
// Frames come from a FrameSource so the same controller runs against a
// live webcam in the browser or scripted playback in tests. Submissions
// are strictly sequential: the next frame is only requested after the
// previous response arrives.

import {
  CoachClient,
  FrameFeedback,
  GuideRect,
  SessionConfig,
  SessionReport,
  SessionSummary,
} from './api.js';

export interface FrameSource {
  capture(): Promise<Blob>;
}

export interface UiSessionView {
  sessionId: string;
  routine: string;
  phase: 'awaiting-background' | 'posing' | 'finished';
  currentTemplateId: string | null;
  templateMaskUrl: string | null;
  guide: GuideRect;
  // null until at least one frame has been scored
  displayScore: number | null;
  lastFeedback: FrameFeedback | null;
  report: SessionReport | null;
}

export interface SessionFlowOptions {
  guide: GuideRect;
  config?: SessionConfig;
  // capture cadence; the server does not care about timing
  intervalMs?: number;
  onUpdate?: (view: UiSessionView) => void;
}

const sleep = (ms: number) => new Promise((r) => setTimeout(r, ms));

export class SessionFlow {
  private view!: UiSessionView;

  constructor(
    private client: CoachClient,
    private source: FrameSource,
    private options: SessionFlowOptions,
  ) {}

  get currentView(): UiSessionView {
    return this.view;
  }

  private publish(summary: SessionSummary, feedback: FrameFeedback | null, report: SessionReport | null) {
    this.view = {
      sessionId: summary.session_id,
      routine: summary.routine,
      phase: summary.phase,
      currentTemplateId: summary.current_template_id,
      templateMaskUrl: summary.current_template_id
        ? this.client.templateMaskUrl(summary.current_template_id)
        : null,
      guide: summary.guide,
      displayScore: feedback ? feedback.display_score : (this.view?.displayScore ?? null),
      lastFeedback: feedback ?? this.view?.lastFeedback ?? null,
      report,
    };
    this.options.onUpdate?.(this.view);
  }

  // Creates the session, captures the background, then scores frames at
  // the configured cadence until the server reports the session finished.
  // Resolves with the final report.
  async run(routine: string): Promise<SessionReport> {
    const interval = this.options.intervalMs ?? 1000;
    const sessionId = await this.client.createSession(
      routine,
      this.options.guide,
      this.options.config,
    );
    this.publish(await this.client.getSummary(sessionId), null, null);

    const background = await this.source.capture();
    await this.client.submitBackground(sessionId, background);
    this.publish(await this.client.getSummary(sessionId), null, null);

    let feedback: FrameFeedback | null = null;
    while (!feedback?.session_finished) {
      if (feedback && interval > 0) await sleep(interval);
      const frame = await this.source.capture();
      feedback = await this.client.submitFrame(sessionId, frame);
      this.publish(await this.client.getSummary(sessionId), feedback, null);
    }

    const report = await this.client.getReport(sessionId);
    this.publish(await this.client.getSummary(sessionId), feedback, report);
    return report;
  }
}
