/** Labeler application: page list, canvas editing, save/conflict handling. */
import { ApiClient, ConflictError } from './api.js';
import { actionForKey } from './keyboard.js';
import { drawOverlays, hitBox, hitHandle } from './render.js';
import { AnnotationSession } from './session.js';
import { canvasRect, PLACEHOLDER } from './types.js';
const client = new ApiClient('');
let pages = [];
let current = null;
let session = null;
let image = null;
let selection = new Set();
let drag = null;
let mouseX = 0;
const view = { scale: 1 };
const canvas = document.getElementById('page-canvas');
const ctx = canvas.getContext('2d');
const pageList = document.getElementById('page-list');
const statusBar = document.getElementById('status');
const banner = document.getElementById('conflict-banner');
function setStatus(text) {
    statusBar.textContent = text;
}
function redraw() {
    if (!session || !image || !current)
        return;
    drawOverlays(ctx, image, session.boxes, selection, current.height, view);
    const dirty = session.dirty ? ' *' : '';
    setStatus(`${current.id}${dirty} — ${session.boxes.length} boxes, v${session.version}`);
}
function toPage(e) {
    const rect = canvas.getBoundingClientRect();
    return { x: (e.clientX - rect.left) / view.scale, y: (e.clientY - rect.top) / view.scale };
}
function applyEdit(edit) {
    if (!session)
        return;
    const result = session.apply(edit);
    if (!result.ok) {
        setStatus(`rejected: ${result.problem}`);
        flashCanvas();
        return;
    }
    redraw();
}
function flashCanvas() {
    canvas.classList.add('invalid');
    setTimeout(() => canvas.classList.remove('invalid'), 300);
}
async function openPage(info) {
    const payload = await client.getBoxes(info.id);
    current = info;
    session = new AnnotationSession(info.id, info.width, info.height, payload.version, payload.boxes);
    selection = new Set();
    banner.hidden = true;
    image = new Image();
    image.onload = () => {
        view.scale = Math.min(3, Math.max(1, Math.floor(900 / info.width)));
        canvas.width = info.width * view.scale;
        canvas.height = info.height * view.scale;
        redraw();
    };
    image.src = client.imageUrl(info.id) + `?v=${payload.version}`;
    renderPageList();
}
function renderPageList() {
    pageList.innerHTML = '';
    for (const p of pages) {
        const item = document.createElement('li');
        item.textContent = p.id;
        if (current && p.id === current.id)
            item.classList.add('active');
        item.onclick = () => { void openPage(p); };
        pageList.appendChild(item);
    }
}
async function save() {
    if (!session || !session.dirty) {
        setStatus('nothing to save');
        return;
    }
    const problem = session.firstProblem();
    if (problem) {
        setStatus(`cannot save: ${problem}`);
        flashCanvas();
        return;
    }
    try {
        const newVersion = await client.putBoxes(session.pageId, session.version, session.boxes);
        session.markSaved(newVersion);
        redraw();
        setStatus(`saved v${newVersion}`);
    }
    catch (err) {
        if (err instanceof ConflictError) {
            banner.hidden = false;
            banner.querySelector('span').textContent =
                `Page changed on the server (v${err.serverVersion}); reload to pick it up.`;
        }
        else {
            setStatus(String(err));
        }
    }
}
async function reloadFromServer() {
    if (!session)
        return;
    const payload = await client.getBoxes(session.pageId);
    session.reload(payload.version, payload.boxes);
    selection = new Set();
    banner.hidden = true;
    redraw();
}
async function autosegment() {
    if (!session)
        return;
    if (!window.confirm('Replace all boxes with fresh segmentation?'))
        return;
    const payload = await client.autosegment(session.pageId);
    session.reload(payload.version, payload.boxes);
    selection = new Set();
    redraw();
}
canvas.addEventListener('mousedown', (e) => {
    if (!session || !current)
        return;
    const { x, y } = toPage(e);
    const hit = hitBox(session.boxes, current.height, x, y);
    if (hit >= 0 && selection.has(hit)) {
        const rect = canvasRect(session.boxes[hit], current.height);
        const corner = hitHandle(rect, x, y, view.scale);
        if (corner >= 0) {
            drag = { mode: 'resize', index: hit, corner, startX: x, startY: y,
                lastX: x, lastY: y, original: { ...session.boxes[hit] } };
            return;
        }
    }
    if (hit >= 0) {
        if (e.shiftKey) {
            selection.has(hit) ? selection.delete(hit) : selection.add(hit);
        }
        else {
            selection = new Set([hit]);
        }
        drag = { mode: 'move', index: hit, corner: -1, startX: x, startY: y,
            lastX: x, lastY: y };
    }
    else {
        if (!e.shiftKey)
            selection = new Set();
        drag = { mode: 'add', index: -1, corner: -1, startX: x, startY: y,
            lastX: x, lastY: y };
    }
    redraw();
});
canvas.addEventListener('mousemove', (e) => {
    const { x, y } = toPage(e);
    mouseX = x;
    if (!drag || !session || !current)
        return;
    drag.lastX = x;
    drag.lastY = y;
    if (drag.mode === 'add') {
        redraw();
        ctx.save();
        ctx.setTransform(view.scale, 0, 0, view.scale, 0, 0);
        ctx.strokeStyle = '#2a2';
        ctx.strokeRect(Math.min(drag.startX, x), Math.min(drag.startY, y), Math.abs(x - drag.startX), Math.abs(y - drag.startY));
        ctx.restore();
    }
});
canvas.addEventListener('mouseup', () => {
    if (!drag || !session || !current) {
        drag = null;
        return;
    }
    const { mode, index, corner, startX, startY, lastX, lastY, original } = drag;
    drag = null;
    const h = current.height;
    if (mode === 'move') {
        const dx = Math.round(lastX - startX);
        const dy = Math.round(startY - lastY); // canvas y grows downward
        if (dx !== 0 || dy !== 0)
            applyEdit({ kind: 'move', index, dx, dy });
        return;
    }
    if (mode === 'resize' && original) {
        const x = Math.round(lastX);
        const yPage = Math.round(h - lastY);
        let { left, bottom, right, top } = original;
        if (corner === 0 || corner === 2)
            left = x;
        else
            right = x;
        if (corner === 0 || corner === 1)
            top = yPage;
        else
            bottom = yPage;
        applyEdit({ kind: 'resize', index, left, bottom, right, top });
        return;
    }
    if (mode === 'add') {
        const left = Math.round(Math.min(startX, lastX));
        const right = Math.round(Math.max(startX, lastX));
        const top = Math.round(h - Math.min(startY, lastY));
        const bottom = Math.round(h - Math.max(startY, lastY));
        if (right - left >= 2 && top - bottom >= 2) {
            applyEdit({ kind: 'add', box: { label: PLACEHOLDER, left, bottom, right,
                    top, page: 0 } });
            selection = new Set([session.boxes.length - 1]);
            redraw();
        }
    }
});
document.addEventListener('keydown', (e) => {
    if (!session)
        return;
    const action = actionForKey(e);
    if (!action)
        return;
    e.preventDefault();
    switch (action.kind) {
        case 'relabel':
            for (const i of selection)
                applyEdit({ kind: 'relabel', index: i, label: action.label });
            break;
        case 'delete': {
            const ordered = [...selection].sort((a, b) => b - a);
            for (const i of ordered)
                applyEdit({ kind: 'delete', index: i });
            selection = new Set();
            redraw();
            break;
        }
        case 'undo':
            session.undo();
            selection = new Set();
            redraw();
            break;
        case 'save':
            void save();
            break;
        case 'split': {
            const [first] = selection;
            if (first !== undefined) {
                applyEdit({ kind: 'split', index: first, atX: Math.round(mouseX) });
                selection = new Set();
                redraw();
            }
            break;
        }
        case 'merge':
            if (selection.size >= 2) {
                applyEdit({ kind: 'merge', indices: [...selection] });
                selection = new Set();
                redraw();
            }
            break;
        case 'clear-selection':
            selection = new Set();
            redraw();
            break;
        case 'next-box':
        case 'prev-box': {
            const n = session.boxes.length;
            if (n === 0)
                break;
            const step = action.kind === 'next-box' ? 1 : -1;
            const first = selection.size ? [...selection][0] : -step;
            selection = new Set([(first + step + n) % n]);
            redraw();
            break;
        }
    }
});
document.getElementById('save-button').addEventListener('click', () => { void save(); });
document.getElementById('autosegment-button').addEventListener('click', () => { void autosegment(); });
document.getElementById('reload-button').addEventListener('click', () => { void reloadFromServer(); });
window.addEventListener('beforeunload', (e) => {
    if (session?.dirty)
        e.preventDefault();
});
async function boot() {
    pages = await client.listPages();
    renderPageList();
    if (pages.length)
        await openPage(pages[0]);
    else
        setStatus('no pages in corpus');
}
void boot();
