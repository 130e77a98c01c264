/**
 * Annotation session: the working box list for one page, with validation,
 * an undo stack, and dirty tracking.  Pure state machine — network and DOM
 * live elsewhere — so the edit semantics are unit-testable in node.
 */
import { boxProblem, cloneBox, PLACEHOLDER, sameBox } from './types.js';
const clamp = (v, lo, hi) => Math.min(hi, Math.max(lo, v));
export class AnnotationSession {
    constructor(pageId, pageWidth, pageHeight, version, boxes) {
        this.dirty = false;
        this.undoStack = [];
        this.pageId = pageId;
        this.pageWidth = pageWidth;
        this.pageHeight = pageHeight;
        this.version = version;
        this.boxes = boxes.map(cloneBox);
        this.loadedBoxes = boxes.map(cloneBox);
    }
    validate(box) {
        return boxProblem(box, this.pageWidth, this.pageHeight);
    }
    commit(next) {
        this.undoStack.push(this.boxes);
        this.boxes = next;
        this.dirty = true;
        return { ok: true };
    }
    apply(edit) {
        switch (edit.kind) {
            case 'relabel': {
                const box = this.boxes[edit.index];
                if (!box)
                    return { ok: false, problem: 'no such box' };
                const next = { ...box, label: edit.label };
                const problem = this.validate(next);
                if (problem)
                    return { ok: false, problem };
                return this.commit(this.boxes.map((b, i) => (i === edit.index ? next : b)));
            }
            case 'move': {
                const box = this.boxes[edit.index];
                if (!box)
                    return { ok: false, problem: 'no such box' };
                const w = box.right - box.left;
                const h = box.top - box.bottom;
                const left = clamp(box.left + edit.dx, 0, this.pageWidth - w);
                const bottom = clamp(box.bottom + edit.dy, 0, this.pageHeight - h);
                const next = { ...box, left, bottom, right: left + w, top: bottom + h };
                const problem = this.validate(next);
                if (problem)
                    return { ok: false, problem };
                return this.commit(this.boxes.map((b, i) => (i === edit.index ? next : b)));
            }
            case 'resize': {
                const box = this.boxes[edit.index];
                if (!box)
                    return { ok: false, problem: 'no such box' };
                const next = {
                    ...box,
                    left: clamp(edit.left, 0, this.pageWidth),
                    right: clamp(edit.right, 0, this.pageWidth),
                    bottom: clamp(edit.bottom, 0, this.pageHeight),
                    top: clamp(edit.top, 0, this.pageHeight),
                };
                const problem = this.validate(next);
                if (problem)
                    return { ok: false, problem };
                return this.commit(this.boxes.map((b, i) => (i === edit.index ? next : b)));
            }
            case 'delete': {
                if (!this.boxes[edit.index])
                    return { ok: false, problem: 'no such box' };
                return this.commit(this.boxes.filter((_, i) => i !== edit.index));
            }
            case 'add': {
                const problem = this.validate(edit.box);
                if (problem)
                    return { ok: false, problem };
                return this.commit([...this.boxes, cloneBox(edit.box)]);
            }
            case 'split': {
                const box = this.boxes[edit.index];
                if (!box)
                    return { ok: false, problem: 'no such box' };
                if (edit.atX <= box.left || edit.atX >= box.right) {
                    return { ok: false, problem: 'split point outside box' };
                }
                const leftHalf = { ...box, label: PLACEHOLDER, right: edit.atX };
                const rightHalf = { ...box, label: PLACEHOLDER, left: edit.atX };
                for (const half of [leftHalf, rightHalf]) {
                    const problem = this.validate(half);
                    if (problem)
                        return { ok: false, problem };
                }
                const next = [...this.boxes];
                next.splice(edit.index, 1, leftHalf, rightHalf);
                return this.commit(next);
            }
            case 'merge': {
                const indices = [...new Set(edit.indices)].sort((a, b) => a - b);
                if (indices.length < 2)
                    return { ok: false, problem: 'merge needs at least two boxes' };
                const members = indices.map((i) => this.boxes[i]);
                if (members.some((b) => !b))
                    return { ok: false, problem: 'no such box' };
                const union = {
                    label: PLACEHOLDER,
                    left: Math.min(...members.map((b) => b.left)),
                    bottom: Math.min(...members.map((b) => b.bottom)),
                    right: Math.max(...members.map((b) => b.right)),
                    top: Math.max(...members.map((b) => b.top)),
                    page: members[0].page,
                };
                const problem = this.validate(union);
                if (problem)
                    return { ok: false, problem };
                const next = this.boxes.filter((_, i) => !indices.includes(i));
                next.splice(indices[0], 0, union);
                return this.commit(next);
            }
        }
    }
    canUndo() {
        return this.undoStack.length > 0;
    }
    undo() {
        const prev = this.undoStack.pop();
        if (!prev)
            return false;
        this.boxes = prev;
        this.dirty = this.undoStack.length > 0
            || !this.sameAsLoaded();
        return true;
    }
    sameAsLoaded() {
        return this.boxes.length === this.loadedBoxes.length
            && this.boxes.every((b, i) => sameBox(b, this.loadedBoxes[i]));
    }
    /** First validation problem in the working list, or null when saveable. */
    firstProblem() {
        for (const box of this.boxes) {
            const problem = this.validate(box);
            if (problem)
                return problem;
        }
        return null;
    }
    /** Record a successful server write. */
    markSaved(newVersion) {
        this.version = newVersion;
        this.loadedBoxes = this.boxes.map(cloneBox);
        this.undoStack = [];
        this.dirty = false;
    }
    /** Adopt fresh server state (reload after a conflict, or autosegment). */
    reload(version, boxes) {
        this.version = version;
        this.boxes = boxes.map(cloneBox);
        this.loadedBoxes = boxes.map(cloneBox);
        this.undoStack = [];
        this.dirty = false;
    }
}
