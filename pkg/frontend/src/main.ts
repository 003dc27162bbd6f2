// DOM wiring for the coaching page: routine picker, mirrored camera feed
// with the current template overlaid at 40% opacity, live score, and the
// final report.

import { CoachClient } from './api.js';
import { openWebcam, WebcamFrameSource } from './capture.js';
import { SessionFlow, UiSessionView } from './session.js';

const CANVAS = 128;
const SERVICE_URL =
  new URLSearchParams(location.search).get('service') ?? 'http://127.0.0.1:8000';

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function renderView(view: UiSessionView) {
  el('phase').textContent = view.phase;
  el<HTMLImageElement>('overlay').src = view.templateMaskUrl ?? '';
  el('score').textContent =
    view.displayScore === null ? '–' : String(view.displayScore);
  if (view.lastFeedback) {
    el('verdict').textContent = view.lastFeedback.passed
      ? 'PASS'
      : view.lastFeedback.subject_detected
        ? 'try again'
        : 'step into the frame';
  }
  if (view.report) {
    el('report').textContent =
      `Game score: ${view.report.game_score.toFixed(1)} / 100 ` +
      `(templates passed: ${view.report.passed.filter(Boolean).length}` +
      `/${view.report.passed.length})`;
  }
}

async function init() {
  const client = new CoachClient(SERVICE_URL);
  const routineSelect = el<HTMLSelectElement>('routine');
  const status = el('status');

  try {
    const routines = await client.listRoutines();
    for (const r of routines) {
      const opt = document.createElement('option');
      opt.value = r.name;
      opt.textContent = `${r.name} (${r.template_count} poses)`;
      routineSelect.appendChild(opt);
    }
  } catch {
    status.textContent = `Service unreachable at ${SERVICE_URL} — start it and reload.`;
    return;
  }

  const video = el<HTMLVideoElement>('camera');
  try {
    await openWebcam(video);
  } catch {
    status.textContent = 'Webcam access denied. Allow camera access and reload.';
    return;
  }

  el<HTMLButtonElement>('start').addEventListener('click', async () => {
    status.textContent = 'Clear the frame, capturing background…';
    const interval = Number(el<HTMLInputElement>('interval').value) || 1000;
    const flow = new SessionFlow(
      client,
      new WebcamFrameSource(video, CANVAS, CANVAS),
      {
        guide: { x: 0, y: 0, w: CANVAS, h: CANVAS },
        intervalMs: interval,
        onUpdate: renderView,
      },
    );
    try {
      const report = await flow.run(routineSelect.value);
      status.textContent = `Session complete — game score ${report.game_score.toFixed(1)}.`;
    } catch (err) {
      status.textContent = `Session failed: ${err}`;
    }
  });

  status.textContent = 'Ready. Pick a routine and press Start.';
}

document.addEventListener('DOMContentLoaded', init);
