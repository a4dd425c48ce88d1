"""Normal ordering of words via bracket-table rewriting.

The relation table stores, for every generator pair, the commutator
[x_j, x_i] of the later generator past the earlier one; rewriting
replaces an out-of-order adjacent pair x_j x_i by x_i x_j + [x_j, x_i].
Every right-hand-side term must carry at least one power of a
deformation parameter (the CONTRACTING condition), so each correction
strictly raises parameter degree and the worklist dies at the working
truncation order.
"""

from __future__ import annotations

from .errors import CapExceededError, DocumentError, NonContractingError
from .ncpoly import Context, NCPoly, TensorNCPoly, word_str


class RelationTable:
    def __init__(self, context: Context, entries):
        """entries: iterable of (left index, right index, NCPoly rhs)
        declaring [x_left, x_right] = rhs. Each unordered pair may be
        declared once; the canonical orientation kept is [later, earlier].
        """
        self.context = context
        self.rhs = {}
        for left, right, poly in entries:
            if left == right:
                raise DocumentError(
                    f"bracket [{self._name(left)},{self._name(right)}] of a "
                    "generator with itself"
                )
            j, i = (left, right) if left > right else (right, left)
            if (j, i) in self.rhs:
                raise DocumentError(
                    f"duplicate bracket key for pair "
                    f"({self._name(i)},{self._name(j)})"
                )
            self.rhs[(j, i)] = poly if left > right else -poly
        self._check_contracting()
        self._nf_cache = {}
        self._canonicalise_rhs()

    def _name(self, idx):
        return self.context.basis.names[idx]

    def _check_contracting(self):
        for (j, i), poly in self.rhs.items():
            for word, coeff in poly.terms.items():
                if coeff.min_degree() == 0:
                    raise NonContractingError(
                        f"relation [{self._name(j)},{self._name(i)}] has a "
                        f"parameter-free term on word {word_str(word, self.context.basis)}"
                    )

    def _canonicalise_rhs(self):
        # Right-hand sides written with unsorted words (products like
        # l_x * exp(..p_x..)) are normalised against the table itself;
        # this keeps every stored rhs in normal form without changing
        # the two-sided ideal.
        new = {
            key: normalize(poly, self) for key, poly in self.rhs.items()
        }
        self.rhs = new
        self._nf_cache = {}

    def bracket_poly(self, a: int, b: int) -> NCPoly:
        """[x_a, x_b] as an NCPoly (zero when the pair is undeclared)."""
        if a == b:
            return NCPoly.zero(self.context)
        if a > b:
            got = self.rhs.get((a, b))
            return got if got is not None else NCPoly.zero(self.context)
        got = self.rhs.get((b, a))
        return -got if got is not None else NCPoly.zero(self.context)

    def substitute(self, images, target: Context = None) -> "RelationTable":
        ctx = self.context if target is None else target
        entries = []
        for (j, i), poly in self.rhs.items():
            entries.append((j, i, poly.substitute(images, ctx)))
        return RelationTable(ctx, entries)

    def pairs(self):
        """All unordered generator pairs (i<j) of the basis."""
        n = len(self.context.basis)
        return [(i, j) for i in range(n) for j in range(i + 1, n)]

    def __repr__(self):
        body = ", ".join(
            f"[{self._name(j)},{self._name(i)}]={poly}"
            for (j, i), poly in sorted(self.rhs.items())
        )
        return f"RelationTable({body})"


def _first_descent(word):
    for pos in range(len(word) - 1):
        if word[pos] > word[pos + 1]:
            return pos
    return None


def _descents(word):
    return [pos for pos in range(len(word) - 1) if word[pos] > word[pos + 1]]


def normal_form_word(table: RelationTable, word, choose=None) -> NCPoly:
    """Normal form of a single word as an NCPoly.

    choose, when given, picks which out-of-order adjacent pair to
    rewrite first (position index into the descent list); the default
    always takes the leftmost. Results for any choice agree whenever
    the presentation Jacobi defects vanish. Only the default strategy
    is cached.
    """
    context = table.context
    use_cache = choose is None
    if use_cache:
        cached = table._nf_cache.get(word)
        if cached is not None:
            return cached

    result = {}
    work = [(tuple(word), context.const_poly(1))]
    while work:
        w, coeff = work.pop()
        if not coeff:
            continue
        if use_cache and w != word:
            cached = table._nf_cache.get(w)
            if cached is not None:
                for u, c in cached.terms.items():
                    s = coeff * c
                    if s:
                        acc = result.get(u)
                        acc = s if acc is None else acc + s
                        if acc:
                            result[u] = acc
                        else:
                            del result[u]
                continue
        if choose is None:
            pos = _first_descent(w)
        else:
            ds = _descents(w)
            pos = ds[choose(w, ds)] if ds else None
        if pos is None:
            acc = result.get(w)
            acc = coeff if acc is None else acc + coeff
            if acc:
                result[w] = acc
            else:
                del result[w]
            continue
        a, b = w[pos], w[pos + 1]
        head, tail = w[:pos], w[pos + 2:]
        work.append((head + (b, a) + tail, coeff))
        for rw, rc in table.bracket_poly(a, b).terms.items():
            c = coeff * rc
            if not c:
                continue
            nw = head + rw + tail
            if len(nw) > context.cap:
                raise CapExceededError(
                    f"rewriting [{table._name(a)},{table._name(b)}] produced "
                    f"word {word_str(nw, context.basis)} beyond cap {context.cap}"
                )
            work.append((nw, c))
    nf = NCPoly(context, result)
    if use_cache:
        table._nf_cache[word] = nf
    return nf


def normalize(a: NCPoly, table: RelationTable, choose=None) -> NCPoly:
    out = NCPoly.zero(a.context)
    for word, coeff in a.terms.items():
        out = out + normal_form_word(table, word, choose).scale(coeff)
    return out


def normalize_tensor(a: TensorNCPoly, table: RelationTable) -> TensorNCPoly:
    """Normalize each tensor factor independently."""
    out = {}
    for key, coeff in a.terms.items():
        factors = [normal_form_word(table, w) for w in key]
        partial = {(): coeff}
        for nf in factors:
            grown = {}
            for done, c in partial.items():
                for w, cw in nf.terms.items():
                    s = c * cw
                    if not s:
                        continue
                    nk = done + (w,)
                    acc = grown.get(nk)
                    acc = s if acc is None else acc + s
                    if acc:
                        grown[nk] = acc
                    else:
                        del grown[nk]
            partial = grown
        for nk, c in partial.items():
            acc = out.get(nk)
            acc = c if acc is None else acc + c
            if acc:
                out[nk] = acc
            else:
                del out[nk]
    return TensorNCPoly(a.context, a.arity, out)


def commutator(a: NCPoly, b: NCPoly, table: RelationTable) -> NCPoly:
    return normalize(a * b - b * a, table)


def tensor_commutator(a: TensorNCPoly, b: TensorNCPoly, table: RelationTable) -> TensorNCPoly:
    return normalize_tensor(a * b - b * a, table)


def presentation_jacobi_defect(table: RelationTable) -> dict:
    """Normal form of the Jacobi cyclic sum for every generator triple;
    an all-zero result certifies local confluence of the rewriting at
    the working order."""
    context = table.context
    n = len(context.basis)
    out = {}
    for i in range(n):
        gi = NCPoly.generator(context, i)
        for j in range(i + 1, n):
            gj = NCPoly.generator(context, j)
            for k in range(j + 1, n):
                gk = NCPoly.generator(context, k)
                total = (
                    commutator(table.bracket_poly(i, j), gk, table)
                    + commutator(table.bracket_poly(j, k), gi, table)
                    + commutator(table.bracket_poly(k, i), gj, table)
                )
                if total:
                    out[(i, j, k)] = total
    return out
