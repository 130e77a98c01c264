/** Shared types for the box labeler, mirroring the server's wire format. */

export interface Box {
  label: string;
  left: number;
  bottom: number;
  right: number;
  top: number;
  page: number;
}

export interface PageInfo {
  id: string;
  image_url: string;
  box_url: string;
  width: number;
  height: number;
  version: number;
}

export interface BoxesPayload {
  version: number;
  boxes: Box[];
}

export const PLACEHOLDER = '*';

/**
 * Client-side mirror of the server's box invariants: single-character label,
 * non-empty geometry, inside the page (half-open high edges allow
 * right === width and top === height).  Returns null when valid.
 */
export function boxProblem(box: Box, pageWidth: number, pageHeight: number): string | null {
  if ([...box.label].length !== 1) {
    return `label ${JSON.stringify(box.label)} is not a single character`;
  }
  if (!Number.isInteger(box.left) || !Number.isInteger(box.bottom)
      || !Number.isInteger(box.right) || !Number.isInteger(box.top)) {
    return 'non-integer coordinate';
  }
  if (box.left >= box.right || box.bottom >= box.top) {
    return 'empty box';
  }
  if (box.left < 0 || box.bottom < 0 || box.right > pageWidth || box.top > pageHeight) {
    return `box outside ${pageWidth}x${pageHeight} page`;
  }
  if (box.page < 0) {
    return 'negative page index';
  }
  return null;
}

export function cloneBox(box: Box): Box {
  return { ...box };
}

export function sameBox(a: Box, b: Box): boolean {
  return a.label === b.label && a.left === b.left && a.bottom === b.bottom
      && a.right === b.right && a.top === b.top && a.page === b.page;
}

/** Canvas-space rectangle (top-left origin) for drawing a box overlay. */
export function canvasRect(box: Box, pageHeight: number):
    { x: number; y: number; w: number; h: number } {
  return {
    x: box.left,
    y: pageHeight - box.top,
    w: box.right - box.left,
    h: box.top - box.bottom,
  };
}
