/** Thin client over the labeling server's JSON endpoints. */
export class ConflictError extends Error {
    constructor(serverVersion) {
        super(`stale version; server is at ${serverVersion}`);
        this.serverVersion = serverVersion;
    }
}
export class ApiClient {
    constructor(baseUrl = '') {
        this.baseUrl = baseUrl;
    }
    url(path) {
        return this.baseUrl + path;
    }
    async listPages() {
        const resp = await fetch(this.url('/api/pages'));
        if (!resp.ok)
            throw new Error(`list pages failed: ${resp.status}`);
        return resp.json();
    }
    async getBoxes(pageId) {
        const resp = await fetch(this.url(`/api/pages/${pageId}/boxes`));
        if (!resp.ok)
            throw new Error(`get boxes failed: ${resp.status}`);
        return resp.json();
    }
    /** Resolves to the new version; throws ConflictError on a stale PUT. */
    async putBoxes(pageId, version, boxes) {
        const resp = await fetch(this.url(`/api/pages/${pageId}/boxes`), {
            method: 'PUT',
            headers: { 'Content-Type': 'application/json' },
            body: JSON.stringify({ version, boxes }),
        });
        const body = await resp.json();
        if (resp.status === 409) {
            throw new ConflictError(body.version ?? -1);
        }
        if (!resp.ok || body.version === undefined) {
            throw new Error(`save failed: ${body.error ?? resp.status}`);
        }
        return body.version;
    }
    async autosegment(pageId) {
        const resp = await fetch(this.url(`/api/pages/${pageId}/autosegment`), {
            method: 'POST',
        });
        if (!resp.ok)
            throw new Error(`autosegment failed: ${resp.status}`);
        return resp.json();
    }
    imageUrl(pageId) {
        return this.url(`/api/pages/${pageId}/image`);
    }
}
