"""User-adaptive handwritten-character OCR toolkit.

Label page images with character boxes, train a per-user language set
(glyph inventory, shape prototypes, frequency table, dictionary automata,
ambiguity table), recognize free-flow handwritten pages, and score the
results character by character.
"""

__version__ = "0.1.0"
