"""Parser for hypergeometric summand expressions.

Grammar (whitespace insignificant, `**` is a synonym for `^`):

    expr   := term (('*'|'/') term)*
    term   := atom ('^' exponent)?
    atom   := 'binomial' '(' affine ',' affine ')' | affine '!'
            | '(' expr ')' | rational | 'x'
    affine := integer-linear combination of n, k and integer constants
    rational := int ('/' int)?

An exponent is an integer for any atom; a power atom (rational or ``x``)
also accepts an affine exponent, as in ``x^k`` or ``2^(n-k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .hyper import (AffineNK, BinomialFactor, ConstantFactor, FactorialFactor,
                    HyperTerm, PowerFactor)
from .poly import ALPHABET, Alphabet


class ParseError(ValueError):
    """Syntax or structure error, with position and expectation."""

    def __init__(self, message: str, pos: int, expected: Optional[str] = None):
        self.pos = pos
        self.expected = expected
        suffix = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at position {pos}{suffix}")


class UnknownVariable(ParseError):
    """Symbol outside the registered alphabet of the summand grammar."""

    def __init__(self, name: str, pos: int):
        self.name = name
        super().__init__(f"unknown variable {name!r}", pos)


@dataclass(frozen=True)
class _Token:
    kind: str  # NAME, INT, OP, END
    value: str
    pos: int


_OPS = set("+-*/^(),!")


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("NAME", text[i:j], i))
            i = j
            continue
        if text.startswith("**", i):
            tokens.append(_Token("OP", "^", i))
            i += 2
            continue
        if ch in _OPS:
            tokens.append(_Token("OP", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("END", "", len(text)))
    return tokens


# -- AST ------------------------------------------------------------------

@dataclass(frozen=True)
class _Num:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class _Sym:
    name: str
    pos: int


@dataclass(frozen=True)
class _BinOp:
    op: str
    left: object
    right: object
    pos: int


@dataclass(frozen=True)
class _Neg:
    operand: object
    pos: int


@dataclass(frozen=True)
class _Fact:
    operand: object
    pos: int


@dataclass(frozen=True)
class _Call:
    name: str
    args: tuple
    pos: int


class _Parser:
    def __init__(self, tokens: List[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        token = self.tokens[self.i]
        self.i += 1
        return token

    def expect_op(self, op: str) -> _Token:
        token = self.peek()
        if token.kind != "OP" or token.value != op:
            raise ParseError(
                "unexpected end of input" if token.kind == "END"
                else f"unexpected token {token.value!r}",
                token.pos, expected=repr(op))
        return self.advance()

    def parse(self):
        node = self.sum()
        token = self.peek()
        if token.kind != "END":
            raise ParseError(f"unexpected token {token.value!r}", token.pos)
        return node

    def sum(self):
        node = self.product()
        while self.peek().kind == "OP" and self.peek().value in "+-":
            op = self.advance()
            right = self.product()
            node = _BinOp(op.value, node, right, op.pos)
        return node

    def product(self):
        node = self.unary()
        while self.peek().kind == "OP" and self.peek().value in "*/":
            op = self.advance()
            right = self.unary()
            node = _BinOp(op.value, node, right, op.pos)
        return node

    def unary(self):
        token = self.peek()
        if token.kind == "OP" and token.value in "+-":
            self.advance()
            operand = self.unary()
            return operand if token.value == "+" else _Neg(operand, token.pos)
        return self.postfix()

    def postfix(self):
        node = self.primary()
        while self.peek().kind == "OP" and self.peek().value == "!":
            bang = self.advance()
            node = _Fact(node, bang.pos)
        if self.peek().kind == "OP" and self.peek().value == "^":
            caret = self.advance()
            exponent = self.unary()
            node = _BinOp("^", node, exponent, caret.pos)
            while self.peek().kind == "OP" and self.peek().value == "!":
                bang = self.advance()
                node = _Fact(node, bang.pos)
        return node

    def primary(self):
        token = self.peek()
        if token.kind == "INT":
            self.advance()
            return _Num(Fraction(int(token.value)), token.pos)
        if token.kind == "NAME":
            self.advance()
            if self.peek().kind == "OP" and self.peek().value == "(":
                self.advance()
                args = [self.sum()]
                while self.peek().kind == "OP" and self.peek().value == ",":
                    self.advance()
                    args.append(self.sum())
                self.expect_op(")")
                return _Call(token.value, tuple(args), token.pos)
            return _Sym(token.value, token.pos)
        if token.kind == "OP" and token.value == "(":
            self.advance()
            node = self.sum()
            self.expect_op(")")
            return node
        raise ParseError(
            "unexpected end of input" if token.kind == "END"
            else f"unexpected token {token.value!r}",
            token.pos, expected="an atom")


# -- conversion to hypergeometric factors -----------------------------------------


def _node_pos(node) -> int:
    return node.pos


def _to_affine(node) -> Optional[AffineNK]:
    if isinstance(node, _Num):
        if node.value.denominator != 1:
            return None
        return AffineNK(0, 0, int(node.value))
    if isinstance(node, _Sym):
        if node.name == "n":
            return AffineNK(1, 0, 0)
        if node.name == "k":
            return AffineNK(0, 1, 0)
        return None
    if isinstance(node, _Neg):
        inner = _to_affine(node.operand)
        return None if inner is None else -inner
    if isinstance(node, _BinOp):
        if node.op in "+-":
            left = _to_affine(node.left)
            right = _to_affine(node.right)
            if left is None or right is None:
                return None
            return left + right if node.op == "+" else left - right
        if node.op == "*":
            left = _to_affine(node.left)
            right = _to_affine(node.right)
            if left is None or right is None:
                return None
            if left.is_const():
                return right.scaled(left.c0)
            if right.is_const():
                return left.scaled(right.c0)
    return None


def _require_affine(node) -> AffineNK:
    affine = _to_affine(node)
    if affine is None:
        if isinstance(node, _Sym):
            raise UnknownVariable(node.name, node.pos)
        raise ParseError("expected an integer-affine form in n and k",
                         _node_pos(node))
    return affine


def _const_int(node) -> Optional[int]:
    if isinstance(node, _Num) and node.value.denominator == 1:
        return int(node.value)
    if isinstance(node, _Neg):
        inner = _const_int(node.operand)
        return None if inner is None else -inner
    return None


def _flatten(node, mult: int, out: list) -> None:
    if isinstance(node, _BinOp) and node.op == "*":
        _flatten(node.left, mult, out)
        _flatten(node.right, mult, out)
        return
    if isinstance(node, _BinOp) and node.op == "/":
        _flatten(node.left, mult, out)
        _flatten(node.right, -mult, out)
        return
    if isinstance(node, _BinOp) and node.op == "^":
        exponent = _const_int(node.right)
        if exponent is not None:
            _flatten(node.left, mult * exponent, out)
            return
        affine = _to_affine(node.right)
        if affine is not None:
            base = node.left
            if isinstance(base, _Sym) and base.name == "x":
                out.append(PowerFactor("x", affine, mult))
                return
            if isinstance(base, _Num):
                out.append(PowerFactor(base.value, affine, mult))
                return
            if isinstance(base, _Neg) and isinstance(base.operand, _Num):
                out.append(PowerFactor(-base.operand.value, affine, mult))
                return
            if isinstance(base, _Sym) and base.name not in ("n", "k", "x"):
                raise UnknownVariable(base.name, base.pos)
            raise ParseError("affine exponents need a rational or x base",
                             node.pos)
        raise ParseError("exponent must be an integer or an affine form",
                         node.pos)
    if isinstance(node, _Neg):
        out.append(ConstantFactor(Fraction(-1), mult))
        _flatten(node.operand, mult, out)
        return
    if isinstance(node, _Fact):
        out.append(FactorialFactor(_require_affine(node.operand), mult))
        return
    if isinstance(node, _Call):
        if node.name != "binomial":
            raise ParseError(f"unknown function {node.name!r}", node.pos)
        if len(node.args) != 2:
            raise ParseError("binomial takes two arguments", node.pos)
        out.append(BinomialFactor(_require_affine(node.args[0]),
                                  _require_affine(node.args[1]), mult))
        return
    if isinstance(node, _Num):
        if node.value != 1:
            out.append(ConstantFactor(node.value, mult))
        return
    if isinstance(node, _Sym):
        if node.name == "x":
            out.append(PowerFactor("x", AffineNK(0, 0, 1), mult))
            return
        if node.name in ("n", "k"):
            raise ParseError(
                f"bare {node.name!r} is not hypergeometric syntax here; "
                "use it inside binomial(...), a factorial, or an exponent",
                node.pos)
        raise UnknownVariable(node.name, node.pos)
    if isinstance(node, _BinOp) and node.op in "+-":
        raise ParseError("additive expression is not a valid factor "
                         "(only binomial/factorial arguments may be sums)",
                         node.pos)
    raise ParseError("malformed expression", _node_pos(node))


def parse_term(text: str, alphabet: Alphabet = ALPHABET) -> HyperTerm:
    """Parse a summand expression into a HyperTerm with shift quotients."""
    tokens = _tokenize(text)
    ast = _Parser(tokens).parse()
    factors: list = []
    _flatten(ast, 1, factors)
    return HyperTerm.from_factors(tuple(factors), alphabet)
