/** Canvas drawing for the page image and box overlays. */

import { Box, canvasRect, PLACEHOLDER } from './types.js';

export const HANDLE_SIZE = 6;

export interface ViewState {
  scale: number;
}

export function drawOverlays(ctx: CanvasRenderingContext2D, image: CanvasImageSource,
                             boxes: Box[], selection: Set<number>,
                             pageHeight: number, view: ViewState): void {
  const s = view.scale;
  ctx.save();
  ctx.setTransform(s, 0, 0, s, 0, 0);
  ctx.clearRect(0, 0, ctx.canvas.width / s, ctx.canvas.height / s);
  ctx.drawImage(image, 0, 0);
  ctx.lineWidth = 1 / s;
  ctx.font = `${12 / s}px monospace`;
  boxes.forEach((box, i) => {
    const r = canvasRect(box, pageHeight);
    const selected = selection.has(i);
    ctx.strokeStyle = selected ? '#d22' : box.label === PLACEHOLDER ? '#e80' : '#26c';
    ctx.fillStyle = ctx.strokeStyle;
    ctx.strokeRect(r.x, r.y, r.w, r.h);
    ctx.fillText(box.label, r.x, r.y - 2 / s);
    if (selected) {
      for (const [hx, hy] of handlePositions(r)) {
        ctx.fillRect(hx - HANDLE_SIZE / (2 * s), hy - HANDLE_SIZE / (2 * s),
                     HANDLE_SIZE / s, HANDLE_SIZE / s);
      }
    }
  });
  ctx.restore();
}

export function handlePositions(r: { x: number; y: number; w: number; h: number }):
    Array<[number, number]> {
  return [
    [r.x, r.y], [r.x + r.w, r.y], [r.x, r.y + r.h], [r.x + r.w, r.y + r.h],
  ];
}

/** Which resize corner (0..3) the canvas-space point hits, or -1. */
export function hitHandle(r: { x: number; y: number; w: number; h: number },
                          px: number, py: number, scale: number): number {
  const positions = handlePositions(r);
  const reach = HANDLE_SIZE / scale;
  for (let i = 0; i < positions.length; i++) {
    if (Math.abs(px - positions[i][0]) <= reach && Math.abs(py - positions[i][1]) <= reach) {
      return i;
    }
  }
  return -1;
}

/** Topmost box whose canvas rect contains the point, or -1. */
export function hitBox(boxes: Box[], pageHeight: number, px: number, py: number): number {
  for (let i = boxes.length - 1; i >= 0; i--) {
    const r = canvasRect(boxes[i], pageHeight);
    if (px >= r.x && px <= r.x + r.w && py >= r.y && py <= r.y + r.h) {
      return i;
    }
  }
  return -1;
}
