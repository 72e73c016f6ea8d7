"""Reading and writing polynomials in a small infix grammar.

Literals are integers, names are the ring's declared variables, and the
operators are ``+ - * / ^`` (``**`` also works) with parentheses.  Division
is only allowed by rational constants.  Printing emits the same grammar, so
``parse_poly(format_poly(f), f.ring) == f``.
"""

import ast

from gmpy2 import mpq

from .tower import RPoly

MAX_EXPONENT = 100_000


class ParseError(ValueError):
    def __init__(self, msg, text, pos=None):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{msg}{where}: {text!r}")


def _position_map(text, src):
    """Map a column of the stripped, rewritten source back into ``text``."""
    back = []
    for i, ch in enumerate(text):
        back.extend([i, i] if ch == "^" else [i])
    lead = len(src) - len(src.lstrip())

    def to_text(col):
        off = col + lead
        return back[off] if off < len(back) else len(text)

    return to_text


def parse_poly(text, ring):
    src = text.replace("^", "**")
    to_text = _position_map(text, src)
    try:
        tree = ast.parse(src.strip() or "0", mode="eval")
    except SyntaxError as e:
        if not e.offset or e.lineno != 1:
            raise ParseError("unexpected end of input", text, len(text)) from None
        raise ParseError(e.msg or "syntax error", text, to_text(e.offset - 1)) from None
    value = _Eval(ring, text, to_text).visit(tree.body)
    if isinstance(value, RPoly):
        return value
    return ring.const(value)


class _Eval(ast.NodeVisitor):
    def __init__(self, ring, text, to_text):
        self.ring = ring
        self.text = text
        self.to_text = to_text

    def fail(self, msg, node):
        col = getattr(node, "col_offset", None)
        raise ParseError(msg, self.text, None if col is None else self.to_text(col))

    def generic_visit(self, node):
        self.fail(f"unsupported syntax {type(node).__name__}", node)

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            self.fail("only integer literals are allowed", node)
        return mpq(node.value)

    def visit_Name(self, node):
        if node.id not in self.ring.variables:
            self.fail(f"undeclared symbol {node.id!r}", node)
        return self.ring.gen(node.id)

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        self.fail("unsupported unary operator", node)

    def visit_BinOp(self, node):
        left = self.visit(node.left)
        right = self.visit(node.right)
        op = node.op
        if isinstance(op, ast.Add):
            return left + right
        if isinstance(op, ast.Sub):
            return left - right
        if isinstance(op, ast.Mult):
            return left * right
        if isinstance(op, ast.Div):
            if isinstance(right, RPoly):
                s = right.scalar()
                if s is None:
                    self.fail("division only by rational constants", node)
                right = s if not self.ring.characteristic else mpq(s)
            if not right:
                self.fail("division by zero", node)
            if isinstance(left, RPoly):
                return left * self.ring.const(1 / mpq(right))
            return left / right
        if isinstance(op, ast.Pow):
            if isinstance(right, RPoly) or right.denominator != 1 or right < 0:
                self.fail("exponents must be nonnegative integer literals", node)
            if right > MAX_EXPONENT:
                self.fail(f"exponent {right} exceeds {MAX_EXPONENT}", node)
            e = int(right)
            if isinstance(left, RPoly):
                return left**e
            return left**e
        self.fail("unsupported operator", node)


def _terms(data, lev, exps, out):
    if lev == 0:
        out.append((tuple(reversed(exps)), data))
        return
    for e in range(len(data) - 1, -1, -1):
        c = data[e]
        if c:
            _terms(c, lev - 1, exps + [e], out)


def format_data(data, ring):
    return format_poly(RPoly(ring, data))


def format_poly(f):
    """Render in the parse grammar, highest powers of the top variable first."""
    names = f.ring.variables
    terms = []
    _terms(f.data, f.ring.nlevels, [], terms)
    if not terms:
        return "0"
    parts = []
    for exps, c in terms:
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e
        )
        neg = c < 0
        if neg:
            c = -c
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)
