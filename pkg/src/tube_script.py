##module for straight-line tube programs: parse, print and execute `.tube` scripts
from dataclasses import dataclass, field
from typing import ClassVar, Dict, List, Optional, Tuple

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from src.encoding import Codebook
from src.errors import CapacityExceededError, ConfigurationError, RppError, ScriptError, ScriptParseError
from src.settings import DEFAULT_CAP, logger
from src.strands import NUCLEOTIDES, Strand
from src.tube import (
    AnnealMode,
    HybridizationRule,
    MatchRegion,
    Tube,
    annealing,
    append,
    copy,
    denaturation,
    detect,
    discard,
    input_strands,
    merge,
    selection,
    separation,
)

grammar = r"""
?start: header | statement
header: "CODEBOOK" PATH
?statement: input | merge | copy | detect | separate | select
          | anneal | denature | discard | append
input: "INPUT" NAME "{" (item ("," item)*)? "}"
merge: "MERGE" NAME NAME
copy: "COPY" NAME NAME
detect: "DETECT" NAME
separate: "SEPARATE" NAME "{" STRAND ("," STRAND)* "}" NAME region?
select: "SELECT" NAME INT NAME
anneal: "ANNEAL" NAME
denature: "DENATURE" NAME
discard: "DISCARD" NAME
append: "APPEND" NAME STRAND
item: COUNT? STRAND
!region: "PRE" | "WHOLE"
COUNT: /[0-9]+x/
NAME: /[A-Za-z_][A-Za-z0-9_]*/
STRAND: /'[^'\n]*'/
PATH: /\S+/
%import common.INT
%import common.WS_INLINE
%ignore WS_INLINE
"""


def _quote(strand: Strand) -> str:
    return f"'{strand}'"


@dataclass(frozen=True)
class Statement:
    keyword: ClassVar[str] = ""

    def reads(self) -> Tuple[str, ...]:
        return ()

    def writes(self) -> Tuple[str, ...]:
        return ()

    def tubes(self) -> Tuple[str, ...]:
        return self.reads() + self.writes()

    def render(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Input(Statement):
    keyword: ClassVar[str] = "INPUT"
    tube: str
    items: Tuple[Tuple[int, Strand], ...] = ()
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def writes(self):
        return (self.tube,)

    def render(self):
        parts = [_quote(s) if n == 1 else f"{n}x{_quote(s)}" for n, s in self.items]
        return f"INPUT {self.tube} {{{', '.join(parts)}}}"


@dataclass(frozen=True)
class Merge(Statement):
    keyword: ClassVar[str] = "MERGE"
    target: str
    source: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def writes(self):
        # merging an undeclared tube merges an empty one
        return (self.target, self.source)

    def render(self):
        return f"MERGE {self.target} {self.source}"


@dataclass(frozen=True)
class Copy(Statement):
    keyword: ClassVar[str] = "COPY"
    source: str
    target: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def reads(self):
        return (self.source,)

    def writes(self):
        return (self.target,)

    def render(self):
        return f"COPY {self.source} {self.target}"


@dataclass(frozen=True)
class Detect(Statement):
    keyword: ClassVar[str] = "DETECT"
    tube: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def reads(self):
        return (self.tube,)

    def render(self):
        return f"DETECT {self.tube}"


@dataclass(frozen=True)
class Separate(Statement):
    keyword: ClassVar[str] = "SEPARATE"
    source: str
    patterns: Tuple[Strand, ...]
    target: str
    region: MatchRegion = MatchRegion.WHOLE
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def reads(self):
        return (self.source,)

    def writes(self):
        return (self.target,)

    def render(self):
        text = f"SEPARATE {self.source} {{{', '.join(_quote(p) for p in self.patterns)}}} {self.target}"
        return text + " PRE" if self.region is MatchRegion.PRE_MARKER else text


@dataclass(frozen=True)
class Select(Statement):
    keyword: ClassVar[str] = "SELECT"
    source: str
    length: int
    target: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def reads(self):
        return (self.source,)

    def writes(self):
        return (self.target,)

    def render(self):
        return f"SELECT {self.source} {self.length} {self.target}"


@dataclass(frozen=True)
class Anneal(Statement):
    keyword: ClassVar[str] = "ANNEAL"
    tube: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def reads(self):
        return (self.tube,)

    def render(self):
        return f"ANNEAL {self.tube}"


@dataclass(frozen=True)
class Denature(Statement):
    keyword: ClassVar[str] = "DENATURE"
    tube: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def reads(self):
        return (self.tube,)

    def render(self):
        return f"DENATURE {self.tube}"


@dataclass(frozen=True)
class Discard(Statement):
    keyword: ClassVar[str] = "DISCARD"
    tube: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def reads(self):
        return (self.tube,)

    def render(self):
        return f"DISCARD {self.tube}"


@dataclass(frozen=True)
class Append(Statement):
    keyword: ClassVar[str] = "APPEND"
    tube: str
    strand: Strand
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def reads(self):
        return (self.tube,)

    def render(self):
        return f"APPEND {self.tube} {_quote(self.strand)}"


STATEMENT_KINDS = (Input, Merge, Copy, Detect, Separate, Select, Anneal, Denature, Discard, Append)


@dataclass(frozen=True)
class TubeProgram:
    codebook: Optional[str] = None
    statements: Tuple[Statement, ...] = ()

    def __len__(self) -> int:
        return len(self.statements)


@dataclass(frozen=True)
class _Header:
    path: str


class StatementBuilder(Transformer):
    '''Turns the parse tree of one line into a Statement (or a header)'''

    def __init__(self, line: int, column: int = 1):
        super().__init__()
        self.line = line
        self.column = column

    def _at(self, items):
        return {"line": self.line, "column": self.column}

    def header(self, items):
        (path,) = items
        return _Header(str(path))

    def item(self, items):
        if len(items) == 2:
            count, strand = items
            return int(str(count)[:-1]), str(strand)[1:-1]
        (strand,) = items
        return 1, str(strand)[1:-1]

    def region(self, items):
        (keyword,) = items
        return MatchRegion.PRE_MARKER if str(keyword) == "PRE" else MatchRegion.WHOLE

    def input(self, items):
        name, *rest = items
        return Input(str(name), tuple(rest), **self._at(items))

    def merge(self, items):
        target, source = items
        return Merge(str(target), str(source), **self._at(items))

    def copy(self, items):
        source, target = items
        return Copy(str(source), str(target), **self._at(items))

    def detect(self, items):
        (name,) = items
        return Detect(str(name), **self._at(items))

    def separate(self, items):
        source, *rest = items
        region = MatchRegion.WHOLE
        if isinstance(rest[-1], MatchRegion):
            region = rest.pop()
        target = rest.pop()
        patterns = tuple(str(p)[1:-1] for p in rest)
        return Separate(str(source), patterns, str(target), region, **self._at(items))

    def select(self, items):
        source, length, target = items
        return Select(str(source), int(length), str(target), **self._at(items))

    def anneal(self, items):
        (name,) = items
        return Anneal(str(name), **self._at(items))

    def denature(self, items):
        (name,) = items
        return Denature(str(name), **self._at(items))

    def discard(self, items):
        (name,) = items
        return Discard(str(name), **self._at(items))

    def append(self, items):
        name, strand = items
        return Append(str(name), str(strand)[1:-1], **self._at(items))


parser = Lark(grammar, start="start", parser="lalr")


def _strip_comment(text: str) -> str:
    cut = text.find("#")
    return text if cut < 0 else text[:cut]


def _lexical_errors(tree, line: int) -> List[ScriptError]:
    found = []
    for token in tree.scan_values(lambda v: isinstance(v, Token) and v.type == "STRAND"):
        for index, symbol in enumerate(str(token)[1:-1]):
            if symbol not in NUCLEOTIDES:
                found.append(ScriptError(
                    "lexical",
                    f"invalid nucleotide {symbol!r} in strand literal",
                    line,
                    token.column + 1 + index,
                ))
                break
    return found


def _syntax_error(err: UnexpectedInput, line: int, text: str) -> ScriptError:
    if isinstance(err, UnexpectedEOF):
        return ScriptError("syntax", "statement ends too early", line, len(text.rstrip()) + 1)
    if isinstance(err, UnexpectedToken):
        token = err.token
        if token.type == "$END":
            return ScriptError("syntax", "statement ends too early", line, len(text.rstrip()) + 1)
        return ScriptError("syntax", f"unexpected {str(token)!r}", line, token.column)
    if isinstance(err, UnexpectedCharacters):
        return ScriptError("syntax", f"unexpected character {text[err.pos_in_stream]!r}", line, err.column)
    return ScriptError("syntax", str(err).splitlines()[0], line, getattr(err, "column", 0) or 0)


def _semantic_errors(statements: List[Statement]) -> List[ScriptError]:
    declared = set()
    found = []
    for statement in statements:
        for name in statement.reads():
            if name not in declared:
                found.append(ScriptError("semantic", f"tube {name} is used before it is declared",
                                         statement.line, statement.column))
        declared.update(statement.writes())
    return found


def parse_program(text: str, filename: str = "<script>") -> TubeProgram:
    diagnostics: List[ScriptError] = []
    statements: List[Statement] = []
    codebook = None
    for number, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        try:
            tree = parser.parse(body)
        except UnexpectedInput as err:
            diagnostics.append(_syntax_error(err, number, body))
            continue
        problems = _lexical_errors(tree, number)
        if problems:
            diagnostics.extend(problems)
            continue
        parsed = StatementBuilder(number, len(body) - len(body.lstrip()) + 1).transform(tree)
        if isinstance(parsed, _Header):
            if statements or codebook is not None:
                diagnostics.append(ScriptError("syntax", "CODEBOOK must be the first statement", number, 1))
            codebook = parsed.path
            continue
        statements.append(parsed)

    if not diagnostics:
        diagnostics = _semantic_errors(statements)
    if diagnostics:
        raise ScriptParseError(diagnostics, filename)
    return TubeProgram(codebook=codebook, statements=tuple(statements))


def print_program(program: TubeProgram) -> str:
    lines = []
    if program.codebook is not None:
        lines.append(f"CODEBOOK {program.codebook}")
    lines += [statement.render() for statement in program.statements]
    return "".join(f"{line}\n" for line in lines)


@dataclass
class ScriptEnv:
    codebook: Optional[Codebook] = None
    mode: AnnealMode = AnnealMode.ASSEMBLY
    cap: int = DEFAULT_CAP
    tubes: Dict[str, Tube] = field(default_factory=dict)
    detect_log: List[Tuple[str, bool]] = field(default_factory=list)
    _rule: Optional[HybridizationRule] = field(default=None, init=False, repr=False)

    def tube(self, name: str) -> Tube:
        if name not in self.tubes:
            self.tubes[name] = Tube(name, self.cap)
        return self.tubes[name]

    @property
    def rule(self) -> HybridizationRule:
        if self.codebook is None:
            raise ConfigurationError("ANNEAL needs a codebook; add a CODEBOOK header")
        if self._rule is None:
            self._rule = HybridizationRule.from_codebook(self.codebook)
        return self._rule

    def detect_lines(self) -> List[str]:
        return [f"DETECT {name} {'YES' if found else 'NO'}" for name, found in self.detect_log]


def apply_statement(statement: Statement, env: ScriptEnv) -> Optional[bool]:
    if isinstance(statement, Input):
        counts: Dict[Strand, int] = {}
        for count, strand in statement.items:
            counts[strand] = counts.get(strand, 0) + count
        input_strands(env.tube(statement.tube), counts)
    elif isinstance(statement, Merge):
        merge(env.tube(statement.target), env.tube(statement.source))
    elif isinstance(statement, Copy):
        copy(env.tube(statement.source), env.tube(statement.target))
    elif isinstance(statement, Detect):
        found = detect(env.tube(statement.tube))
        env.detect_log.append((statement.tube, found))
        return found
    elif isinstance(statement, Separate):
        marker = env.codebook.marker if env.codebook is not None else None
        separation(env.tube(statement.source), statement.patterns, env.tube(statement.target),
                   statement.region, marker)
    elif isinstance(statement, Select):
        selection(env.tube(statement.source), statement.length, env.tube(statement.target))
    elif isinstance(statement, Anneal):
        annealing(env.tube(statement.tube), env.rule, env.mode)
    elif isinstance(statement, Denature):
        denaturation(env.tube(statement.tube))
    elif isinstance(statement, Discard):
        discard(env.tube(statement.tube))
    elif isinstance(statement, Append):
        append(env.tube(statement.tube), statement.strand)
    else:
        raise TypeError(f"not a tube statement: {statement!r}")
    return None


def execute(program: TubeProgram, env: ScriptEnv) -> ScriptEnv:
    for statement in program.statements:
        try:
            apply_statement(statement, env)
        except CapacityExceededError as err:
            err.line, err.column = statement.line, statement.column
            logger.error(f"Capacity exceeded at line {statement.line}: {statement.render()}")
            raise
        except (ValueError, RppError) as err:
            raise ScriptError("runtime", str(err), statement.line, statement.column) from err
        logger.debug(f"{statement.render()} -> {[len(env.tube(n)) for n in statement.tubes()]}")
    return env
