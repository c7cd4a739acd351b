"""AST, parser, printer and size metric for the pure clause language.

Clauses are definite: ``head.`` or ``head :- a1, ..., ak.``  Variables
are uppercase- or underscore-initial identifiers, constants and
functors lowercase-initial.  ``%`` starts a line comment.  Predicates
have arity >= 1 and must be used at one arity throughout a program.
"""

from __future__ import annotations

from dataclasses import dataclass


class ParseError(ValueError):
    """Syntax or arity-consistency error, with source position when known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {col})"
        super().__init__(message)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class Constant:
    name: str


@dataclass(frozen=True)
class Compound:
    functor: str
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ParseError(f"compound term {self.functor} needs arguments")


Term = Variable | Constant | Compound


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple

    def __post_init__(self):
        if not self.args:
            raise ParseError(f"predicate {self.predicate} needs arity >= 1")

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def signature(self) -> tuple[str, int]:
        return (self.predicate, self.arity)


@dataclass(frozen=True)
class Clause:
    head: Atom
    body: tuple = ()

    def is_fact(self) -> bool:
        return not self.body

    def atoms(self):
        yield self.head
        yield from self.body


@dataclass(frozen=True)
class Program:
    clauses: tuple

    def __post_init__(self):
        arities: dict[str, int] = {}
        for clause in self.clauses:
            for atom in clause.atoms():
                seen = arities.setdefault(atom.predicate, atom.arity)
                if seen != atom.arity:
                    raise ParseError(
                        f"predicate {atom.predicate} used at arities {seen} and {atom.arity}"
                    )

    def signatures(self) -> list[tuple[str, int]]:
        """All predicate signatures, sorted by name."""
        sigs = {a.signature for c in self.clauses for a in c.atoms()}
        return sorted(sigs)

    def clauses_for(self, signature: tuple[str, int]) -> list[Clause]:
        return [c for c in self.clauses if c.head.signature == signature]


def vars_of(term: Term) -> set[str]:
    """Names of the variables occurring in a term."""
    return set(iter_variables(term))


def iter_variables(term: Term):
    """Variable names of a term in depth-first, left-to-right order."""
    if isinstance(term, Variable):
        yield term.name
    elif isinstance(term, Compound):
        for arg in term.args:
            yield from iter_variables(arg)


@dataclass(frozen=True)
class SizeMetric:
    """Program size: total argument positions over all atoms, heads and bodies."""

    arg_positions: int
    clause_count: int
    atom_count: int


def size_metric(program: Program) -> SizeMetric:
    atoms = [a for c in program.clauses for a in c.atoms()]
    return SizeMetric(
        arg_positions=sum(a.arity for a in atoms),
        clause_count=len(program.clauses),
        atom_count=len(atoms),
    )


# --- parsing ---------------------------------------------------------------

_PUNCT = {"(", ")", ",", "."}


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.col)

    def _advance(self, n: int) -> None:
        for ch in self.text[self.pos : self.pos + n]:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n

    def _skip_blanks(self) -> None:
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "%":
                end = self.text.find("\n", self.pos)
                self._advance((end if end >= 0 else len(self.text)) - self.pos)
            elif ch.isspace():
                self._advance(1)
            else:
                return

    def tokens(self):
        """Yield (kind, value, line, col); kind in var/ident/punct/eof."""
        while True:
            self._skip_blanks()
            line, col = self.line, self.col
            if self.pos >= len(self.text):
                yield ("eof", "", line, col)
                return
            ch = self.text[self.pos]
            if ch in _PUNCT:
                self._advance(1)
                yield ("punct", ch, line, col)
            elif self.text.startswith(":-", self.pos):
                self._advance(2)
                yield ("punct", ":-", line, col)
            elif ch.isalpha() or ch == "_":
                end = self.pos
                while end < len(self.text) and (
                    self.text[end].isalnum() or self.text[end] == "_"
                ):
                    end += 1
                word = self.text[self.pos : end]
                self._advance(end - self.pos)
                kind = "var" if ch.isupper() or ch == "_" else "ident"
                yield (kind, word, line, col)
            else:
                raise self.error(f"unexpected character {ch!r}")


class _Parser:
    def __init__(self, text: str):
        self._stream = _Tokenizer(text).tokens()
        self._tok = next(self._stream)

    def _take(self):
        tok = self._tok
        self._tok = next(self._stream)
        return tok

    def _expect(self, value: str):
        kind, val, line, col = self._tok
        if (kind, val) != ("punct", value):
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", line, col)
        return self._take()

    def program(self) -> Program:
        clauses = []
        while self._tok[0] != "eof":
            clauses.append(self.clause())
        return Program(tuple(clauses))

    def clause(self) -> Clause:
        head = self.atom()
        body = []
        if self._tok[:2] == ("punct", ":-"):
            self._take()
            body.append(self.atom())
            while self._tok[:2] == ("punct", ","):
                self._take()
                body.append(self.atom())
        self._expect(".")
        return Clause(head, tuple(body))

    def atom(self) -> Atom:
        kind, name, line, col = self._tok
        if kind != "ident":
            raise ParseError(f"expected a predicate name, found {name!r}", line, col)
        self._take()
        return Atom(name, self._arg_list(line, col))

    def _arg_list(self, line: int, col: int) -> tuple:
        if self._tok[:2] != ("punct", "("):
            raise ParseError("predicates need at least one argument", line, col)
        self._take()
        args = [self.term()]
        while self._tok[:2] == ("punct", ","):
            self._take()
            args.append(self.term())
        self._expect(")")
        return tuple(args)

    def term(self) -> Term:
        kind, name, line, col = self._tok
        if kind == "var":
            self._take()
            return Variable(name)
        if kind == "ident":
            self._take()
            if self._tok[:2] == ("punct", "("):
                return Compound(name, self._arg_list(line, col))
            return Constant(name)
        raise ParseError(f"expected a term, found {name or 'end of input'!r}", line, col)


def parse(text: str) -> Program:
    """Parse clause text into a Program; raises ParseError with position."""
    return _Parser(text).program()


def render_term(term: Term) -> str:
    if isinstance(term, Variable):
        return term.name
    if isinstance(term, Constant):
        return term.name
    return f"{term.functor}({', '.join(render_term(a) for a in term.args)})"


def render_atom(atom: Atom) -> str:
    return f"{atom.predicate}({', '.join(render_term(a) for a in atom.args)})"


def render_clause(clause: Clause) -> str:
    if clause.is_fact():
        return f"{render_atom(clause.head)}."
    body = ", ".join(render_atom(a) for a in clause.body)
    return f"{render_atom(clause.head)} :- {body}."


def render(program: Program) -> str:
    """Canonical text; parse(render(p)) is structurally equal to p."""
    return "\n".join(render_clause(c) for c in program.clauses) + "\n"
