/**
 * Keyboard mapping.  Plain printable keys relabel the selection (throughput
 * matters: training pages carry hundreds of boxes), so every command lives
 * on a modifier or a non-printable key.
 */
export function actionForKey(e) {
    const mod = e.ctrlKey || e.metaKey;
    if (mod && e.key.toLowerCase() === 'z')
        return { kind: 'undo' };
    if (mod && e.key.toLowerCase() === 's')
        return { kind: 'save' };
    if (e.altKey && e.key.toLowerCase() === 's')
        return { kind: 'split' };
    if (e.altKey && e.key.toLowerCase() === 'm')
        return { kind: 'merge' };
    if (e.key === 'Delete' || e.key === 'Backspace')
        return { kind: 'delete' };
    if (e.key === 'Escape')
        return { kind: 'clear-selection' };
    if (e.key === 'Tab')
        return { kind: 'next-box' };
    if (e.key === 'ArrowRight')
        return { kind: 'next-box' };
    if (e.key === 'ArrowLeft')
        return { kind: 'prev-box' };
    if (!mod && !e.altKey && [...e.key].length === 1 && e.key !== ' ') {
        return { kind: 'relabel', label: e.key };
    }
    return null;
}
