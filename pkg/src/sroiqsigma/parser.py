"""Concrete syntax.

Concept grammar (ASCII, whitespace-insensitive)::

    C    ::= "bot" | "top" | IDENT | "{" IDENT "}" | "!" C | "(" C ")"
           | C "&" C | C "|" C
           | ">=" NAT ROLE C | "<" NAT ROLE C
           | "exists" ROLE "." C | "forall" ROLE "." C | "self" ROLE
           | C "[" SUB "]"
    ROLE ::= IDENT | IDENT "-" | "U"
    SUB  ::= "eps" | IDENT ":=" IDENT ("+"|"-") IDENT
           | IDENT ":=" IDENT ("+"|"-") "(" IDENT "," IDENT ")"

Precedence: "!" and the quantifier/counting forms bind tighter than "&",
which binds tighter than "|"; the postfix "[...]" binds tighter than every
binary operator. "top" desugars to "!bot".

The signature file is a plain-text declaration format with sections
``concepts:``, ``nominals:``, ``roles:``, ``individuals:``, ``hierarchy:``
(lines ``R1 R2 ... <= R``), ``assertions:`` (lines ``Tra R``, ``Dis R S``,
...) and ``order:`` (lines ``S < R``). ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import (
    ConceptSyntaxError,
    NameCategoryError,
    SignatureFileError,
    UnknownNameError,
)
from .syntax import (
    BOT,
    EPSILON,
    TOP,
    UNIVERSAL,
    UNIVERSAL_NAME,
    And,
    AtLeast,
    Concept,
    ConceptAdd,
    ConceptDel,
    Exists,
    Forall,
    LessThan,
    Name,
    Nominal,
    Not,
    Or,
    RBox,
    Role,
    RoleAdd,
    RoleAssertion,
    RoleAxiom,
    RoleDel,
    SelfLoop,
    Signature,
    Subst,
    Substitution,
)

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<nat>\d+)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<op>>=|:=|[(){}\[\]!&|.,+<-])
    """,
    re.VERBOSE,
)

_KEYWORDS = frozenset({"bot", "top", "exists", "forall", "self", "eps"})


@dataclass(frozen=True)
class _Token:
    kind: str  # "nat", "ident", the operator text itself, or "eof"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ConceptSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "nat":
            tokens.append(_Token("nat", m.group(), pos))
        elif m.lastgroup == "ident":
            tokens.append(_Token("ident", m.group(), pos))
        elif m.lastgroup == "op":
            tokens.append(_Token(m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Optional[Signature]):
        self.tokens = _tokenize(text)
        self.index = 0
        self.sig = sig

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def accept(self, kind: str) -> Optional[_Token]:
        if self.peek().kind == kind:
            return self.advance()
        return None

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            found = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise ConceptSyntaxError(f"expected {what}, found {found}", tok.pos)
        return self.advance()

    # -- name resolution ---------------------------------------------------

    def _resolve_concept_name(self, tok: _Token) -> str:
        if self.sig is None:
            return tok.text
        if tok.text in self.sig.concept_names:
            return tok.text
        if tok.text in self.sig.nominal_names:
            raise NameCategoryError(
                f"{tok.text!r} is a nominal; write {{{tok.text}}} (at offset {tok.pos})"
            )
        raise UnknownNameError(f"unknown concept name {tok.text!r} (at offset {tok.pos})")

    def _resolve_nominal_name(self, tok: _Token) -> str:
        if self.sig is None:
            return tok.text
        if tok.text in self.sig.nominal_names:
            return tok.text
        if tok.text in self.sig.concept_names:
            raise NameCategoryError(
                f"{tok.text!r} is a concept name, not a nominal (at offset {tok.pos})"
            )
        raise UnknownNameError(f"unknown nominal {tok.text!r} (at offset {tok.pos})")

    def _resolve_individual(self, tok: _Token) -> str:
        if self.sig is not None and tok.text not in self.sig.individual_names:
            raise UnknownNameError(f"unknown individual {tok.text!r} (at offset {tok.pos})")
        return tok.text

    # -- grammar -----------------------------------------------------------

    def parse_expr(self) -> Concept:
        left = self.parse_and()
        while self.accept("|"):
            left = Or(left, self.parse_and())
        return left

    def parse_and(self) -> Concept:
        left = self.parse_unary()
        while self.accept("&"):
            left = And(left, self.parse_unary())
        return left

    def parse_unary(self) -> Concept:
        tok = self.peek()
        if tok.kind == "!":
            self.advance()
            return Not(self.parse_unary())
        if tok.kind == ">=":
            self.advance()
            bound = int(self.expect("nat", "a counting bound").text)
            role = self.parse_role()
            return AtLeast(bound, role, self.parse_unary())
        if tok.kind == "<":
            self.advance()
            bound = int(self.expect("nat", "a counting bound").text)
            role = self.parse_role()
            return LessThan(bound, role, self.parse_unary())
        if tok.kind == "ident" and tok.text in ("exists", "forall"):
            self.advance()
            role = self.parse_role()
            self.expect(".", "'.' after the quantifier role")
            body = self.parse_unary()
            return Exists(role, body) if tok.text == "exists" else Forall(role, body)
        if tok.kind == "ident" and tok.text == "self":
            self.advance()
            role = self.parse_role()
            if role.is_universal:
                raise ConceptSyntaxError(
                    "local reflexivity over the universal role is not supported", tok.pos
                )
            return SelfLoop(role)
        return self.parse_postfix()

    def parse_postfix(self) -> Concept:
        term = self.parse_atom()
        while self.accept("["):
            sub = self.parse_substitution()
            self.expect("]", "']' closing the substitution")
            term = Subst(term, sub)
        return term

    def parse_atom(self) -> Concept:
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "bot":
            self.advance()
            return BOT
        if tok.kind == "ident" and tok.text == "top":
            self.advance()
            return TOP
        if tok.kind == "(":
            self.advance()
            inner = self.parse_expr()
            self.expect(")", "')'")
            return inner
        if tok.kind == "{":
            open_tok = self.advance()
            name = self.expect("ident", "a nominal name")
            if self.peek().kind != "}":
                raise ConceptSyntaxError("unclosed '{'", open_tok.pos)
            self.advance()
            return Nominal(self._resolve_nominal_name(name))
        if tok.kind == "ident":
            if tok.text in _KEYWORDS:
                raise ConceptSyntaxError(f"unexpected keyword {tok.text!r}", tok.pos)
            self.advance()
            return Name(self._resolve_concept_name(tok))
        found = repr(tok.text) if tok.kind != "eof" else "end of input"
        raise ConceptSyntaxError(f"expected a concept, found {found}", tok.pos)

    def parse_role(self) -> Role:
        tok = self.expect("ident", "a role name")
        if tok.text == UNIVERSAL_NAME:
            if self.peek().kind == "-":
                raise ConceptSyntaxError("the universal role has no inverse", self.peek().pos)
            return UNIVERSAL
        if tok.text in _KEYWORDS:
            raise ConceptSyntaxError(f"unexpected keyword {tok.text!r}", tok.pos)
        if self.sig is not None and tok.text not in self.sig.role_names:
            raise UnknownNameError(f"unknown role name {tok.text!r} (at offset {tok.pos})")
        if self.accept("-"):
            return Role(tok.text, inverse=True)
        return Role(tok.text)

    def parse_substitution(self) -> Substitution:
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "eps":
            self.advance()
            return EPSILON
        lhs = self.expect("ident", "a concept or role name")
        self.expect(":=", "':='")
        mid = self.expect("ident", "the substituted name again")
        if mid.text != lhs.text:
            raise ConceptSyntaxError(
                f"substitution must repeat {lhs.text!r} on the right of ':='", mid.pos
            )
        sign = self.peek()
        if sign.kind not in ("+", "-"):
            raise ConceptSyntaxError("expected '+' or '-'", sign.pos)
        self.advance()
        adding = sign.kind == "+"
        if self.accept("("):
            i = self.expect("ident", "an individual")
            self.expect(",", "','")
            j = self.expect("ident", "an individual")
            self.expect(")", "')'")
            if lhs.text == UNIVERSAL_NAME:
                raise NameCategoryError(
                    f"the universal role cannot be substituted (at offset {lhs.pos})"
                )
            if self.sig is not None and lhs.text not in self.sig.role_names:
                raise UnknownNameError(f"unknown role name {lhs.text!r} (at offset {lhs.pos})")
            cls = RoleAdd if adding else RoleDel
            return cls(lhs.text, self._resolve_individual(i), self._resolve_individual(j))
        ind = self.expect("ident", "an individual")
        if self.sig is not None:
            if lhs.text in self.sig.nominal_names:
                raise NameCategoryError(
                    f"substitution targets nominal {lhs.text!r}, not a concept name"
                    f" (at offset {lhs.pos})"
                )
            if lhs.text not in self.sig.concept_names:
                raise UnknownNameError(
                    f"unknown concept name {lhs.text!r} (at offset {lhs.pos})"
                )
        cls = ConceptAdd if adding else ConceptDel
        return cls(lhs.text, self._resolve_individual(ind))


def parse_concept(text: str, sig: Optional[Signature] = None) -> Concept:
    """Parse concept text; with a signature, every name is resolved and
    category-checked. ``parse_concept(print_concept(c), sig) == c``."""
    parser = _Parser(text, sig)
    concept = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ConceptSyntaxError(f"trailing input {tok.text!r}", tok.pos)
    return concept


# ---------------------------------------------------------------------------
# Signature / RBox files

_SECTIONS = ("concepts", "nominals", "roles", "individuals", "hierarchy", "assertions", "order")


def _parse_file_role(token: str, line_no: int, roles: frozenset[str]) -> Role:
    inverse = token.endswith("-")
    name = token[:-1] if inverse else token
    if name == UNIVERSAL_NAME:
        raise SignatureFileError(f"line {line_no}: the universal role is not allowed here")
    if name not in roles:
        raise SignatureFileError(f"line {line_no}: unknown role name {name!r}")
    return Role(name, inverse)


def parse_signature(text: str) -> tuple[Signature, RBox]:
    """Parse the plain-text signature/RBox declaration format."""
    sections: dict[str, list[tuple[int, list[str]]]] = {name: [] for name in _SECTIONS}
    current: Optional[str] = None
    header_re = re.compile(r"([A-Za-z_]+)\s*:\s*(.*)\Z")
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = header_re.match(line)
        if header:
            if header.group(1) not in _SECTIONS:
                raise SignatureFileError(f"line {line_no}: unknown section {header.group(1)!r}")
            current = header.group(1)
            line = header.group(2).strip()
            if not line:
                continue
        if current is None:
            raise SignatureFileError(f"line {line_no}: content before any section header")
        sections[current].append((line_no, line.split()))

    def names_of(section: str) -> list[str]:
        out: list[str] = []
        for _, tokens in sections[section]:
            out.extend(tokens)
        return out

    sig = Signature.make(
        concepts=names_of("concepts"),
        nominals=names_of("nominals"),
        roles=[r for r in names_of("roles") if r != UNIVERSAL_NAME],
        individuals=names_of("individuals"),
    )

    hierarchy: list[RoleAxiom] = []
    for line_no, tokens in sections["hierarchy"]:
        if "<=" not in tokens:
            raise SignatureFileError(f"line {line_no}: expected 'R1 R2 ... <= R'")
        split = tokens.index("<=")
        word_tokens, rhs_tokens = tokens[:split], tokens[split + 1 :]
        if not word_tokens or len(rhs_tokens) != 1:
            raise SignatureFileError(f"line {line_no}: expected 'R1 R2 ... <= R'")
        rhs = rhs_tokens[0]
        if rhs == UNIVERSAL_NAME or rhs.endswith("-"):
            raise SignatureFileError(
                f"line {line_no}: the right-hand side must be a plain role name"
            )
        if rhs not in sig.role_names:
            raise SignatureFileError(f"line {line_no}: unknown role name {rhs!r}")
        word = tuple(_parse_file_role(t, line_no, sig.role_names) for t in word_tokens)
        hierarchy.append(RoleAxiom(word, rhs))

    assertions: list[RoleAssertion] = []
    for line_no, tokens in sections["assertions"]:
        kind = tokens[0]
        arity = 2 if kind == "Dis" else 1
        if kind not in ("Ref", "Irr", "Sym", "Asy", "Tra", "Dis") or len(tokens) != arity + 1:
            raise SignatureFileError(
                f"line {line_no}: expected 'Ref|Irr|Sym|Asy|Tra ROLE' or 'Dis ROLE ROLE'"
            )
        parsed = [_parse_file_role(t, line_no, sig.role_names) for t in tokens[1:]]
        assertions.append(
            RoleAssertion(kind, parsed[0], parsed[1] if arity == 2 else None)
        )

    order: set[tuple[str, str]] = set()
    for line_no, tokens in sections["order"]:
        if len(tokens) != 3 or tokens[1] != "<":
            raise SignatureFileError(f"line {line_no}: expected 'S < R'")
        for name in (tokens[0], tokens[2]):
            if name == UNIVERSAL_NAME:
                raise SignatureFileError(
                    f"line {line_no}: the universal role is not allowed in the order"
                )
            if name not in sig.role_names:
                raise SignatureFileError(f"line {line_no}: unknown role name {name!r}")
        order.add((tokens[0], tokens[2]))

    return sig, RBox(tuple(hierarchy), tuple(assertions), frozenset(order))


def load_signature(path: str) -> tuple[Signature, RBox]:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_signature(handle.read())
