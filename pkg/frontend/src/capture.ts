// Webcam capture: mirror-view video feed cropped/scaled to the guide
// canvas, encoded as PNG from a scratch canvas.

import { FrameSource } from './session.js';

export async function openWebcam(video: HTMLVideoElement): Promise<MediaStream> {
  const stream = await navigator.mediaDevices.getUserMedia({ video: true });
  video.srcObject = stream;
  await video.play();
  return stream;
}

export class WebcamFrameSource implements FrameSource {
  private canvas: HTMLCanvasElement;

  constructor(
    private video: HTMLVideoElement,
    private width: number,
    private height: number,
  ) {
    this.canvas = document.createElement('canvas');
    this.canvas.width = width;
    this.canvas.height = height;
  }

  capture(): Promise<Blob> {
    const ctx = this.canvas.getContext('2d')!;
    // selfie convention: mirror horizontally so the user can align with
    // the overlaid template
    ctx.save();
    ctx.scale(-1, 1);
    ctx.drawImage(this.video, -this.width, 0, this.width, this.height);
    ctx.restore();
    return new Promise((resolve, reject) => {
      this.canvas.toBlob(
        (blob) => (blob ? resolve(blob) : reject(new Error('canvas encoding failed'))),
        'image/png',
      );
    });
  }
}
