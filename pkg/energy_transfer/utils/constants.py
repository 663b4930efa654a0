EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_UNSUPPORTED = 3

OVERLINE_SUFFIX = "bar"
SECONDARY_MARK = "*"
STATE_SEPARATOR = "."

STEP1_MODES = ("right-to-left", "left-to-right")

# Secondary states of the two-color overpartition matrix, keyed by (upper, lower):
# (color, parity of the potential, overlined)
OVERPARTITION_PARITY_CLASSES = {
    ("bbar", "bbar"): ("b2", 1, False),
    ("bbar", "abar"): ("ba", 1, False),
    ("bbar", "a"): ("ba", 1, True),
    ("bbar", "b"): ("b2", 1, True),
    ("abar", "bbar"): ("ab", 0, False),
    ("abar", "abar"): ("a2", 1, False),
    ("abar", "a"): ("a2", 1, True),
    ("abar", "b"): ("ab", 1, True),
    ("a", "bbar"): ("ab", 0, True),
    ("a", "abar"): ("a2", 0, True),
    ("a", "a"): ("a2", 0, False),
    ("a", "b"): ("ab", 1, False),
    ("b", "bbar"): ("b2", 0, True),
    ("b", "abar"): ("ba", 0, True),
    ("b", "a"): ("ba", 0, False),
    ("b", "b"): ("b2", 0, False),
}

# Non-overlined secondary classes that carry two overlined halves
DOUBLE_WEIGHT_CLASSES = {("ab", 0), ("a2", 1), ("ba", 1), ("b2", 1)}

# Residues mod 16 allowed for the sum of two consecutive parts, keyed by their gap
DISTINCT_ODD_RULES = {
    5: frozenset({3, 13}),
    6: frozenset({0, 4, 8, 12}),
    7: frozenset({1, 5, 7, 9, 11, 15}),
    8: frozenset({0, 2, 6, 8, 10, 14}),
}
DISTINCT_ODD_MIN_GAP = 5
DISTINCT_ODD_FORBIDDEN_PARTS = frozenset({2})

ODD_RULES = {
    0: frozenset({4, 12}),
    1: frozenset({3, 13}),
    2: frozenset({2, 6, 10, 14}),
    3: frozenset({1, 5, 7, 9, 11, 15}),
}
ODD_MIN_GAP = 0

SILADIC_VARIANTS = ("distinct-odd", "odd")

# Threshold scans only need a window wider than the largest possible gap (5)
THRESHOLD_SCAN_RADIUS = 12

DEFAULT_SETTINGS = {
    "strategy": "leftmost",
    "workers": 1,
    "q_order": 10,
    "color_order": 6,
    "n_max": 40,
    "selfcheck_trials": 200,
    "color": True,
}
