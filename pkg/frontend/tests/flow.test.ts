import { describe, expect, it } from 'vitest';
import { CoachClient, FrameFeedback, SessionReport, SessionSummary } from '../src/api.js';
import { SessionFlow, UiSessionView } from '../src/session.js';

// In-memory stand-in for the service: three templates, passes any frame
// whose blob carries the current template's marker byte.
class FakeService {
  sequence = 1;
  phase: SessionSummary['phase'] = 'awaiting-background';
  best: number[] = [0, 0, 0];
  frameLog: number[] = [];

  summary(): SessionSummary {
    return {
      session_id: 'fake',
      routine: 'jumping jack',
      phase: this.phase,
      current_sequence: this.sequence,
      current_template_id: this.phase === 'finished' ? null : `jj:${this.sequence}`,
      template_count: 3,
      guide: { x: 0, y: 0, w: 128, h: 128 },
      best_alphas: {},
    };
  }

  async score(frame: Blob): Promise<FrameFeedback> {
    const marker = new Uint8Array(await frame.arrayBuffer())[0];
    this.frameLog.push(marker);
    const passed = marker === this.sequence;
    if (passed) this.best[this.sequence - 1] = 1;
    if (this.sequence === 3 && passed) {
      this.phase = 'finished';
    } else if (passed) {
      this.sequence += 1;
    }
    return {
      alpha: passed ? 1 : 0,
      display_score: passed ? 100 : 0,
      passed,
      advanced: passed,
      next_sequence: this.phase === 'finished' ? null : this.sequence,
      session_finished: this.phase === 'finished',
      subject_detected: true,
    };
  }

  report(): SessionReport {
    return {
      routine: 'jumping jack',
      best_alphas: this.best,
      passed: this.best.map((b) => b === 1),
      display_scores: this.best.map((b) => b * 100),
      game_score: (100 * this.best.reduce((a, b) => a + b, 0)) / 3,
    };
  }
}

function fakeClient(service: FakeService): CoachClient {
  return {
    listRoutines: async () => [],
    templateMaskUrl: (id: string) => `fake://${id}`,
    fetchTemplateMask: async () => new Blob(),
    createSession: async () => 'fake',
    submitBackground: async () => {
      service.phase = 'posing';
    },
    submitFrame: async (_id: string, png: Blob) => service.score(png),
    getSummary: async () => service.summary(),
    getReport: async () => service.report(),
  } as unknown as CoachClient;
}

const markerBlob = (n: number) => new Blob([new Uint8Array([n])]);

describe('SessionFlow', () => {
  it('runs background then frames to completion and reports the score', async () => {
    const service = new FakeService();
    const views: UiSessionView[] = [];
    // playback script: background, then the three matching poses
    const frames = [markerBlob(0), markerBlob(1), markerBlob(2), markerBlob(3)];
    let i = 0;
    const flow = new SessionFlow(fakeClient(service), { capture: async () => frames[i++] }, {
      guide: { x: 0, y: 0, w: 128, h: 128 },
      intervalMs: 0,
      onUpdate: (v) => views.push(v),
    });

    const report = await flow.run('jumping jack');
    expect(report.game_score).toBe(100);
    expect(service.frameLog).toEqual([1, 2, 3]); // background never scored
    expect(views.at(-1)?.phase).toBe('finished');
    expect(views.at(-1)?.report?.game_score).toBe(100);
  });

  it('retries the same template until it passes', async () => {
    const service = new FakeService();
    const frames = [markerBlob(0), markerBlob(9), markerBlob(9), markerBlob(1), markerBlob(2), markerBlob(3)];
    let i = 0;
    const flow = new SessionFlow(fakeClient(service), { capture: async () => frames[i++] }, {
      guide: { x: 0, y: 0, w: 128, h: 128 },
      intervalMs: 0,
    });
    const report = await flow.run('jumping jack');
    expect(service.frameLog).toEqual([9, 9, 1, 2, 3]);
    expect(report.game_score).toBe(100);
  });

  it('shows no score before the first scored frame', async () => {
    const service = new FakeService();
    const frames = [markerBlob(0), markerBlob(1), markerBlob(2), markerBlob(3)];
    let i = 0;
    const scoresSeen: (number | null)[] = [];
    const flow = new SessionFlow(fakeClient(service), { capture: async () => frames[i++] }, {
      guide: { x: 0, y: 0, w: 128, h: 128 },
      intervalMs: 0,
      onUpdate: (v) => scoresSeen.push(v.displayScore),
    });
    await flow.run('jumping jack');
    expect(scoresSeen[0]).toBeNull(); // session created, nothing scored
    expect(scoresSeen[1]).toBeNull(); // background captured, nothing scored
    expect(scoresSeen[2]).toBe(100);
  });
});
