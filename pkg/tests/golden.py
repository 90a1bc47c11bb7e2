"""The R^{2,3} example map, its two factorizations and their matrices."""

from fractions import Fraction

from cartan import OrthogonalBasis, Signature, Vector


def R(*rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def V(*coords):
    return Vector([Fraction(x) for x in coords])


SIG = Signature(2, 3)

T_E = R(
    [1, 5, 4, 3, 0],
    [-5, 1, 3, -4, 0],
    [4, 3, 1, 5, 0],
    [3, -4, -5, 1, 0],
    [0, 0, 0, 0, -1],
)

# T(e5) - e5 = -2 e5; e5 gives the same reflection
C_VECTORS = (
    V(0, 0, 0, 0, 1),
    V(2, -5, 4, 3, 0),
    V(1, 0, 0, 0, 0),
    V(0, "25/2", -7, "-23/2", 0),
    V(0, 0, "-18/25", "24/25", 0),
)

A = (
    R([1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, -1]),
    R(
        [-1, 5, 4, 3, 0],
        [5, "-23/2", -10, "-15/2", 0],
        [-4, 10, 9, 6, 0],
        [-3, "15/2", 6, "11/2", 0],
        [0, 0, 0, 0, 1],
    ),
    R([-1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]),
    R(
        [1, 0, 0, 0, 0],
        [0, "27/2", 7, "23/2", 0],
        [0, -7, "-73/25", "-161/25", 0],
        [0, "-23/2", "-161/25", "-479/50", 0],
        [0, 0, 0, 0, 1],
    ),
    R(
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, "7/25", "24/25", 0],
        [0, 0, "24/25", "-7/25", 0],
        [0, 0, 0, 0, 1],
    ),
)

# the third vector is e3 + e4 + 2 e5; with e1 in place of e3 the set is not orthogonal
W_ROWS = (
    (0, 0, 1, 1, -1),
    (1, 1, 0, 0, 0),
    (0, 0, 1, 1, 2),
    (0, 0, 1, -1, 0),
    (1, -1, 0, 0, 0),
)
W = OrthogonalBasis(tuple(V(*r) for r in W_ROWS), SIG)

D_VECTORS = (
    V(7, -1, 5, -5, 2),
    V(26, -8, 22, -16, 6),
    V(-5, 5, -7, 1, -6),
)

B = (
    R(
        ["51/2", "-7/2", "-35/2", "35/2", -7],
        ["-7/2", "3/2", "5/2", "-5/2", 1],
        ["35/2", "-5/2", "-23/2", "25/2", -5],
        ["-35/2", "5/2", "25/2", "-23/2", 5],
        [7, -1, -5, 5, -1],
    ),
    R(
        ["347/9", "-104/9", "-286/9", "208/9", "-26/3"],
        ["-104/9", "41/9", "88/9", "-64/9", "8/3"],
        ["286/9", "-88/9", "-233/9", "176/9", "-22/3"],
        ["-208/9", "64/9", "176/9", "-119/9", "16/3"],
        ["26/3", "-8/3", "-22/3", "16/3", -1],
    ),
    R(
        ["43/18", "-25/18", "-35/18", "5/18", "-5/3"],
        ["-25/18", "43/18", "35/18", "-5/18", "5/3"],
        ["35/18", "-35/18", "-31/18", "7/18", "-7/3"],
        ["-5/18", "5/18", "7/18", "17/18", "1/3"],
        ["5/3", "-5/3", "-7/3", "1/3", -1],
    ),
)

T_W = R(
    ["1/3", 2, "4/3", "-10/3", "8/3"],
    [3, 1, 3, 4, -5],
    ["2/3", 1, "-1/3", "-5/3", "4/3"],
    [5, 4, 5, 1, -3],
    [4, 5, 4, -3, 1],
)

C = (
    R(
        ["1/3", -2, "4/3", "10/3", "-8/3"],
        [3, 10, -6, -15, 12],
        ["2/3", 2, "-1/3", "-10/3", "8/3"],
        [5, 15, -10, -24, 20],
        [4, 12, -8, -20, 17],
    ),
    R(
        [1, 0, 0, 0, 0],
        [0, 10, -9, -19, 17],
        [0, 3, -2, "-19/3", "17/3"],
        [0, 19, -19, "-352/9", "323/9"],
        [0, 17, -17, "-323/9", "298/9"],
    ),
    R(
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, -2, "-4/3", "5/3"],
        [0, 0, -4, "-7/9", "20/9"],
        [0, 0, -5, "-20/9", "34/9"],
    ),
)
