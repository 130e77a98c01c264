/** Thin client over the labeling server's JSON endpoints. */

import type { Box, BoxesPayload, PageInfo } from './types.js';

export class ConflictError extends Error {
  serverVersion: number;

  constructor(serverVersion: number) {
    super(`stale version; server is at ${serverVersion}`);
    this.serverVersion = serverVersion;
  }
}

export class ApiClient {
  constructor(private baseUrl: string = '') {}

  private url(path: string): string {
    return this.baseUrl + path;
  }

  async listPages(): Promise<PageInfo[]> {
    const resp = await fetch(this.url('/api/pages'));
    if (!resp.ok) throw new Error(`list pages failed: ${resp.status}`);
    return resp.json() as Promise<PageInfo[]>;
  }

  async getBoxes(pageId: string): Promise<BoxesPayload> {
    const resp = await fetch(this.url(`/api/pages/${pageId}/boxes`));
    if (!resp.ok) throw new Error(`get boxes failed: ${resp.status}`);
    return resp.json() as Promise<BoxesPayload>;
  }

  /** Resolves to the new version; throws ConflictError on a stale PUT. */
  async putBoxes(pageId: string, version: number, boxes: Box[]): Promise<number> {
    const resp = await fetch(this.url(`/api/pages/${pageId}/boxes`), {
      method: 'PUT',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ version, boxes }),
    });
    const body = await resp.json() as { version?: number; error?: string };
    if (resp.status === 409) {
      throw new ConflictError(body.version ?? -1);
    }
    if (!resp.ok || body.version === undefined) {
      throw new Error(`save failed: ${body.error ?? resp.status}`);
    }
    return body.version;
  }

  async autosegment(pageId: string): Promise<BoxesPayload> {
    const resp = await fetch(this.url(`/api/pages/${pageId}/autosegment`), {
      method: 'POST',
    });
    if (!resp.ok) throw new Error(`autosegment failed: ${resp.status}`);
    return resp.json() as Promise<BoxesPayload>;
  }

  imageUrl(pageId: string): string {
    return this.url(`/api/pages/${pageId}/image`);
  }
}
