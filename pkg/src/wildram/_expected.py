"""Frozen expected values for the (p, e) = (5, 4) reproduction run.

Every number here was produced by the two independent routes in this
package (character ladders on the cover side, the echelon engine on the
ray class side) agreeing exactly, and is stored so the reproduction
command and the acceptance tests can compare offline without trusting
the code under test.
"""

P = 5
E = 4

# second jump of the ray class tower: least m with a nonelementary group
M2 = 131

# canonical table rows: (first m of the span, last m, log_p of the order).
# Within a span the group does not change; the row's representative m is
# the first column.
TABLE_ROWS = (
    (0, 26, 0),
    (27, 51, 2),
    (52, 52, 6),
    (53, 76, 8),
    (77, 77, 12),
    (78, 78, 16),
    (79, 101, 18),
    (102, 102, 22),
    (103, 103, 26),
    (104, 104, 30),
    (105, 126, 32),
    (127, 127, 36),
    (128, 128, 40),
    (129, 129, 44),
    (130, 130, 48),
    (131, 131, 50),
)

# conductor ladder of the full tower: (conductor, marginal degree exponent)
LADDER = (
    (27, 2), (52, 4), (53, 2), (77, 4), (78, 4), (79, 2), (102, 4),
    (103, 4), (104, 4), (105, 2), (127, 4), (128, 4), (129, 4), (130, 4),
    (131, 2),
)

# group invariant factors at m = M2: exactly two factors of order p^2
INVARIANTS_AT_M2 = (25, 25) + (5,) * 46

# genus of the full tower at M2, and of the exponent-p^2 subfamily
GENUS_FULL = 5726971603500458411126092834345890300
GENUS_SUBFAMILY = 245665892576300

# |G|/g for the full tower (|G| = 5^54) and the subfamily (|G| = 5^22),
# rendered to 6 significant digits
RATIO_FULL = "9.69293"
RATIO_SUBFAMILY = "9.70499"

SUBFAMILY_DEGREE_EXP = 18  # [L:K] = 5^18
SUBFAMILY_INVARIANTS = (25,) + (5,) * 16
