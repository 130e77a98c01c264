"""Minimal directed acyclic word graphs for the dictionary files.

Built incrementally over the sorted wordlist with suffix sharing through a
signature registry, so the result is the minimal deterministic acyclic
automaton accepting exactly the (deduplicated) input set.  Serialized as a
canonical text form (`DAWG1`) chosen for diffability and golden-file tests;
the dictionaries at this scale do not justify a packed binary format.
"""

from __future__ import annotations

from dataclasses import dataclass


class DawgFormatError(ValueError):
    """Malformed DAWG1 text: bad version, dangling edge, or cycle."""


@dataclass(frozen=True)
class DawgState:
    final: bool
    edges: tuple[tuple[str, int], ...]   # (glyph, target id), sorted by glyph


@dataclass(frozen=True)
class Dawg:
    states: tuple[DawgState, ...]
    root: int

    def __len__(self):
        return len(self.states)


class _Node:
    __slots__ = ("final", "edges")

    def __init__(self):
        self.final = False
        self.edges: dict[str, "_Node"] = {}


def build_dawg(words) -> Dawg:
    """Minimal DAWG accepting exactly the deduplicated word set.

    Input need not be sorted; duplicates are allowed.  Empty words are
    rejected; an empty list yields the empty-language automaton.
    """
    wordlist = sorted(set(words))
    for w in wordlist:
        if w == "":
            raise ValueError("empty word in wordlist")
    root = _Node()
    register: dict = {}
    # (parent, glyph, child) per unregistered node along the previous word
    path: list[tuple[_Node, str, _Node]] = []

    def freeze_from(depth: int) -> None:
        for parent, ch, child in reversed(path[depth:]):
            sig = (child.final, tuple((c, id(t)) for c, t in child.edges.items()))
            existing = register.get(sig)
            if existing is not None:
                parent.edges[ch] = existing
            else:
                register[sig] = child
        del path[depth:]

    prev = ""
    for word in wordlist:
        cp = 0
        limit = min(len(prev), len(word))
        while cp < limit and prev[cp] == word[cp]:
            cp += 1
        freeze_from(cp)
        node = path[-1][2] if path else root
        for ch in word[cp:]:
            child = _Node()
            node.edges[ch] = child
            path.append((node, ch, child))
            node = child
        node.final = True
        prev = word
    freeze_from(0)

    # canonical numbering: preorder DFS following glyph-sorted edges
    order: list[_Node] = []
    ids: dict[int, int] = {}

    def number(node: _Node) -> None:
        ids[id(node)] = len(order)
        order.append(node)
        for _, target in sorted(node.edges.items()):
            if id(target) not in ids:
                number(target)

    number(root)
    states = tuple(
        DawgState(final=n.final,
                  edges=tuple((c, ids[id(t)]) for c, t in sorted(n.edges.items())))
        for n in order)
    return Dawg(states=states, root=0)


def contains(d: Dawg, word: str) -> bool:
    state = d.root
    for ch in word:
        for glyph, target in d.states[state].edges:
            if glyph == ch:
                state = target
                break
        else:
            return False
    return d.states[state].final


def enumerate_words(d: Dawg, max_len: int = 64):
    """Yield every accepted word up to max_len, in lexicographic order."""
    out: list[str] = []

    def walk(state: int, prefix: str) -> None:
        st = d.states[state]
        if st.final:
            out.append(prefix)
        if len(prefix) >= max_len:
            return
        for glyph, target in st.edges:
            walk(target, prefix + glyph)

    walk(d.root, "")
    return out


def near_matches(d: Dawg, word: str, max_edits: int = 1) -> list[tuple[str, str]]:
    """Accepted words within Levenshtein distance 1 of `word`.

    Returns (match, edit_kind) pairs in lexicographic order; edit_kind is one
    of exact/substitution/insertion/deletion, the single edit taking the query
    to the match.  Only max_edits=1 is supported.
    """
    if max_edits != 1:
        raise ValueError("only max_edits=1 is supported")
    hits: set[str] = set()
    n = len(word)

    def walk(state: int, i: int, edits: int, spelled: list[str]) -> None:
        st = d.states[state]
        if st.final and i == n:
            hits.add("".join(spelled))
        for glyph, target in st.edges:
            if i < n and glyph == word[i]:
                spelled.append(glyph)
                walk(target, i + 1, edits, spelled)
                spelled.pop()
            if edits == 0:
                spelled.append(glyph)
                if i < n and glyph != word[i]:
                    walk(target, i + 1, 1, spelled)   # substitution
                walk(target, i, 1, spelled)           # insertion into query
                spelled.pop()
        if i < n and edits == 0:
            walk(state, i + 1, 1, spelled)            # deletion from query
        return

    walk(d.root, 0, 0, [])
    results = []
    for h in sorted(hits):
        if h == word:
            kind = "exact"
        elif len(h) == n:
            kind = "substitution"
        elif len(h) > n:
            kind = "insertion"
        else:
            kind = "deletion"
        results.append((h, kind))
    return results


def serialize_dawg(d: Dawg) -> str:
    lines = [f"DAWG1 {len(d.states)} {d.root}"]
    for i, st in enumerate(d.states):
        parts = [str(i), "F" if st.final else "_"]
        parts.extend(f"{glyph}:{target}" for glyph, target in st.edges)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_dawg(text: str) -> Dawg:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise DawgFormatError("empty DAWG text")
    header = lines[0].split(" ")
    if len(header) != 3 or header[0] != "DAWG1":
        raise DawgFormatError(f"version mismatch: {lines[0]!r}")
    try:
        n_states, root = int(header[1]), int(header[2])
    except ValueError:
        raise DawgFormatError(f"bad header: {lines[0]!r}")
    if len(lines) - 1 != n_states:
        raise DawgFormatError(f"state count {n_states} != {len(lines) - 1} state lines")
    if not 0 <= root < n_states:
        raise DawgFormatError(f"root {root} out of range")
    states = []
    for i, line in enumerate(lines[1:]):
        fields = line.split(" ")
        if len(fields) < 2 or fields[0] != str(i):
            raise DawgFormatError(f"bad state line {i}: {line!r}")
        if fields[1] not in ("F", "_"):
            raise DawgFormatError(f"bad final flag on state {i}")
        edges = []
        seen = set()
        for tok in fields[2:]:
            if len(tok) < 3 or tok[1] != ":":
                raise DawgFormatError(f"bad edge {tok!r} on state {i}")
            glyph = tok[0]
            try:
                target = int(tok[2:])
            except ValueError:
                raise DawgFormatError(f"bad edge target {tok!r} on state {i}")
            if not 0 <= target < n_states:
                raise DawgFormatError(f"dangling edge target {target} on state {i}")
            if glyph in seen:
                raise DawgFormatError(f"duplicate edge label {glyph!r} on state {i}")
            seen.add(glyph)
            edges.append((glyph, target))
        states.append(DawgState(final=fields[1] == "F", edges=tuple(edges)))
    d = Dawg(states=tuple(states), root=root)
    _check_acyclic(d)
    return d


def _check_acyclic(d: Dawg) -> None:
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * len(d.states)
    stack = [(d.root, 0)]
    color[d.root] = GRAY
    while stack:
        state, edge_idx = stack[-1]
        edges = d.states[state].edges
        if edge_idx == len(edges):
            color[state] = BLACK
            stack.pop()
            continue
        stack[-1] = (state, edge_idx + 1)
        target = edges[edge_idx][1]
        if color[target] == GRAY:
            raise DawgFormatError(f"cycle detected through state {target}")
        if color[target] == WHITE:
            color[target] = GRAY
            stack.append((target, 0))


def load_wordlist(path: str) -> list[str]:
    """UTF-8 wordlist, one word per line; blank lines and '#' comments ignored."""
    words = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                words.append(line)
    return words
