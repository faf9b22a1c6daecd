"""Reading and writing factorisations as plain-text documents.

One file carries everything needed to rebuild an object: the coefficient
tower, the weighted variables split into source and target, both
potentials, the two matrix blocks, and (optionally) the grading vectors.
The serializer and parser are exact inverses on every catalog object.

Layout, line by line (order of sections is free, '#' starts a comment):

    mf 1
    name X_E6
    gen t 2 = 1/3
    gen s 12 = -14976*t + 8640
    var source u 1/6
    var target x 2/3
    potential source u^12 + v^2
    potential target x^3 + y^4
    grading alpha0 0 -1/3
    grading alpha1 0 -1/3
    matrix d1
    row <entry> | <entry>
    matrix d0
    row <entry> | <entry>
"""

from .coeffring import CoefficientTower, TowerElement
from .mfcore import Grading, MatrixFactorisation
from .polyring import ParseError, Polynomial, WeightedRing, parse_polynomial
from .rat import rat, rat_str

__all__ = [
    "DocumentError",
    "parse_document",
    "serialize_document",
    "mf_equal",
    "golden_names",
    "load_golden",
]


class DocumentError(ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


def _tail_string(tower, i):
    """Render the relation tail of generator i over generators 0..i."""
    padded = {}
    for exps, c in tower.tails[i].items():
        padded[tuple(exps) + (0,) * (tower.ngens - len(exps))] = c
    return str(TowerElement(tower, padded))


def _parse_tail(names, degrees, tails, gen_name, text, lineno):
    """Parse a relation tail in the tower built so far plus gen_name as a
    placeholder variable, returning the tail dict over gens 0..i."""
    partial = CoefficientTower(tuple(names), tuple(degrees), tuple(tails))
    scratch = WeightedRing(partial, ((gen_name, rat(1)),))
    try:
        p = parse_polynomial(scratch, text)
    except ParseError as err:
        raise DocumentError("bad relation for %s: %s" % (gen_name, err), lineno)
    tail = {}
    for (e,), c in p.terms.items():
        for exps, q in c.coeffs.items():
            tail[tuple(exps) + (e,)] = tail.get(tuple(exps) + (e,), 0) + q
    return {k: v for k, v in tail.items() if v != 0}


def serialize_document(X: MatrixFactorisation) -> str:
    ring = X.ring
    tower = ring.tower
    lines = ["mf 1"]
    if X.name:
        lines.append("name %s" % X.name)
    for i, name in enumerate(tower.names):
        lines.append("gen %s %d = %s" % (name, tower.degrees[i],
                                         _tail_string(tower, i)))
    source = set(X.source_vars)
    for name, w in zip(ring.names, ring.weights):
        side = "source" if name in source else "target"
        lines.append("var %s %s %s" % (side, name, rat_str(w)))
    lines.append("potential source %s" % X.source_potential)
    lines.append("potential target %s" % X.target_potential)
    if X.grading is not None:
        lines.append("grading alpha0 %s" %
                     " ".join(rat_str(a) for a in X.grading.alpha0))
        lines.append("grading alpha1 %s" %
                     " ".join(rat_str(a) for a in X.grading.alpha1))
    for label, mat in (("d1", X.d1), ("d0", X.d0)):
        lines.append("matrix %s" % label)
        for row in mat:
            lines.append("row " + " | ".join(str(e) for e in row))
    return "\n".join(lines) + "\n"


def parse_document(text: str) -> MatrixFactorisation:
    gen_lines = []
    var_lines = []
    pot_lines = {}
    grading_lines = {}
    matrix_lines = {"d0": [], "d1": []}
    name = None
    saw_magic = False
    current_matrix = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not saw_magic:
            if line.split() != ["mf", "1"]:
                raise DocumentError("expected the header 'mf 1'", lineno)
            saw_magic = True
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "name":
            name = rest or None
            current_matrix = None
        elif head == "gen":
            fields = rest.split(None, 2)
            if len(fields) != 3 or not fields[2].startswith("="):
                raise DocumentError("gen wants: gen NAME DEGREE = TAIL", lineno)
            gen_lines.append((fields[0], fields[1], fields[2][1:].strip(), lineno))
            current_matrix = None
        elif head == "var":
            fields = rest.split()
            if len(fields) != 3 or fields[0] not in ("source", "target"):
                raise DocumentError("var wants: var source|target NAME WEIGHT",
                                    lineno)
            var_lines.append((fields[0], fields[1], fields[2], lineno))
            current_matrix = None
        elif head == "potential":
            side, _, expr = rest.partition(" ")
            if side not in ("source", "target") or not expr.strip():
                raise DocumentError("potential wants: potential source|target EXPR",
                                    lineno)
            if side in pot_lines:
                raise DocumentError("duplicate %s potential" % side, lineno)
            pot_lines[side] = (expr.strip(), lineno)
            current_matrix = None
        elif head == "grading":
            which, _, values = rest.partition(" ")
            if which not in ("alpha0", "alpha1"):
                raise DocumentError("grading wants alpha0 or alpha1", lineno)
            if which in grading_lines:
                raise DocumentError("duplicate grading %s" % which, lineno)
            grading_lines[which] = (values.split(), lineno)
            current_matrix = None
        elif head == "matrix":
            if rest not in ("d0", "d1"):
                raise DocumentError("matrix wants d0 or d1", lineno)
            if matrix_lines[rest]:
                raise DocumentError("duplicate matrix %s" % rest, lineno)
            current_matrix = rest
        elif head == "row":
            if current_matrix is None:
                raise DocumentError("row outside a matrix section", lineno)
            matrix_lines[current_matrix].append((rest, lineno))
        else:
            raise DocumentError("unknown directive %r" % head, lineno)

    if not saw_magic:
        raise DocumentError("empty document")

    # tower
    names, degrees, tails = [], [], []
    for gname, gdeg, gtail, lineno in gen_lines:
        if gname in names:
            raise DocumentError("duplicate generator %s" % gname, lineno)
        try:
            deg = int(gdeg)
        except ValueError:
            raise DocumentError("generator degree must be an integer", lineno)
        tails.append(_parse_tail(names, degrees, tails, gname, gtail, lineno))
        names.append(gname)
        degrees.append(deg)
    tower = CoefficientTower(tuple(names), tuple(degrees), tuple(tails))

    # ring
    if not var_lines and not pot_lines:
        raise DocumentError("document declares no variables or potentials")
    seen = set()
    variables = []
    source_vars, target_vars = [], []
    for side, vname, wtext, lineno in var_lines:
        if vname in seen:
            raise DocumentError("duplicate variable %s" % vname, lineno)
        seen.add(vname)
        try:
            w = rat(wtext)
        except ValueError:
            raise DocumentError("bad weight %r" % wtext, lineno)
        if w <= 0:
            raise DocumentError("weight of %s must be positive" % vname, lineno)
        variables.append((vname, w))
        (source_vars if side == "source" else target_vars).append(vname)
    ring = WeightedRing(tower, tuple(variables))

    def poly(entry):
        expr, lineno = entry
        try:
            return parse_polynomial(ring, expr)
        except ParseError as err:
            raise DocumentError(str(err), lineno)

    for side in ("source", "target"):
        if side not in pot_lines:
            raise DocumentError("missing %s potential" % side)
    V = poly(pot_lines["source"])
    W = poly(pot_lines["target"])

    # matrices
    for label in ("d1", "d0"):
        if not matrix_lines[label]:
            raise DocumentError("missing matrix %s" % label)
    rank = len(matrix_lines["d1"])
    mats = {}
    for label in ("d1", "d0"):
        rows = []
        if len(matrix_lines[label]) != rank:
            raise DocumentError("d0 and d1 must have the same rank",
                                matrix_lines[label][0][1])
        for rtext, lineno in matrix_lines[label]:
            entries = [e.strip() for e in rtext.split("|")]
            if len(entries) != rank:
                raise DocumentError(
                    "row has %d entries, expected %d" % (len(entries), rank),
                    lineno)
            rows.append([poly((e, lineno)) for e in entries])
        mats[label] = rows

    grading = None
    if grading_lines:
        if set(grading_lines) != {"alpha0", "alpha1"}:
            raise DocumentError("grading needs both alpha0 and alpha1")
        alphas = {}
        for which, (values, lineno) in grading_lines.items():
            if len(values) != rank:
                raise DocumentError(
                    "grading %s has %d offsets, expected %d"
                    % (which, len(values), rank), lineno)
            try:
                alphas[which] = tuple(rat(v) for v in values)
            except ValueError:
                raise DocumentError("bad grading offset", lineno)
        grading = Grading(alphas["alpha0"], alphas["alpha1"])

    return MatrixFactorisation(ring, tuple(source_vars), tuple(target_vars),
                               V, W, mats["d0"], mats["d1"],
                               grading=grading, name=name)


def mf_equal(X: MatrixFactorisation, Y: MatrixFactorisation) -> bool:
    """Field-by-field identity, the round-trip contract of this format."""
    tx, ty = X.ring.tower, Y.ring.tower
    if (tx.names, tx.degrees, tx.tails) != (ty.names, ty.degrees, ty.tails):
        return False
    if (X.ring.names, X.ring.weights) != (Y.ring.names, Y.ring.weights):
        return False
    if (X.source_vars, X.target_vars) != (Y.source_vars, Y.target_vars):
        return False
    if X.source_potential != Y.source_potential:
        return False
    if X.target_potential != Y.target_potential:
        return False
    if X.d0 != Y.d0 or X.d1 != Y.d1:
        return False
    gx, gy = X.grading, Y.grading
    if (gx is None) != (gy is None):
        return False
    if gx is not None and (tuple(gx.alpha0), tuple(gx.alpha1)) != (
            tuple(gy.alpha0), tuple(gy.alpha1)):
        return False
    return X.name == Y.name


# -- shipped documents ---------------------------------------------------------


def _data_dir():
    from importlib.resources import files

    return files(__package__) / "data"


def golden_names():
    """Names of the documents shipped with the package."""
    return sorted(p.name[:-3] for p in _data_dir().iterdir()
                  if p.name.endswith(".mf"))


def load_golden(name: str) -> MatrixFactorisation:
    path = _data_dir() / (name + ".mf")
    if not path.is_file():
        raise DocumentError("no shipped document named %r" % name)
    return parse_document(path.read_text())
