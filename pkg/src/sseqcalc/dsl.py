"""Line-oriented chart description language (``.sseq`` files).

One statement per line, ``#`` starts a comment::

    grading adams | serre-cohomological | serre-homological | custom a b c d
    lax
    class (n,s) [name=<ident>] [tag=<ident>] [opt key=value ...]
    d <r> (n,s[,i]) (n',s'[,j])
    structline (n,s[,i]) (n',s'[,j]) [label=<string>] [page=<r>]
    replaceclass (n,s[,i]) page=<r>

``serialize`` produces the canonical form, which is a fixed point of
``serialize(parse(...))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .chart import Chart, ClassRef, Grading, GradingKind, StructLine
from .errors import DSLSyntaxError, DuplicateName, SourceSpan, SseqError, UnknownGrading

NAME_RE = re.compile(r"[A-Za-z0-9_/^{}\-]+\Z")
KEY_RE = re.compile(r"[A-Za-z0-9_.\-]+\Z")
BARE_RE = re.compile(r"[^\s()\"#=]+\Z")
INT_RE = re.compile(r"[+-]?\d+\Z")
PERIOD_RE = re.compile(r"#\s*period\s*\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)")

_TOKEN_RE = re.compile(
    r"""
    \s*(
        \([^()]*\)                                  # parenthesised tuple
      | [^\s()"=]+="(?:[^"\\]|\\.)*"                # key="quoted value"
      | "(?:[^"\\]|\\.)*"                           # bare quoted string
      | [^\s()"]+                                   # bare word
    )
    """,
    re.VERBOSE,
)

_GRADING_NAMES = {kind.value: kind for kind in GradingKind}


@dataclass(frozen=True)
class Token:
    text: str
    col: int  # 1-based

    @property
    def end(self) -> int:
        return self.col + len(self.text)


def _strip_comment(line: str) -> str:
    in_quote = False
    escaped = False
    for i, ch in enumerate(line):
        if escaped:
            escaped = False
        elif ch == "\\" and in_quote:
            escaped = True
        elif ch == '"':
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            return line[:i]
    return line


def _tokenize(line: str, lineno: int) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(line):
        if line[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(line, pos)
        if m is None or m.end() == pos:
            col = pos + 1 + (len(line[pos:]) - len(line[pos:].lstrip()))
            raise _syntax(f"unexpected text {line[pos:].strip()!r}", lineno, col, len(line) + 1)
        tokens.append(Token(m.group(1), m.start(1) + 1))
        pos = m.end()
    return tokens


def _syntax(msg: str, line: int, start: int, end: int) -> DSLSyntaxError:
    err = DSLSyntaxError(msg)
    err.span = SourceSpan(line, start, max(end, start + 1))
    return err


def _unquote(text: str) -> str:
    if len(text) >= 2 and text[0] == text[-1] == '"':
        return re.sub(r"\\(.)", r"\1", text[1:-1])
    return text


def _quote(text: str) -> str:
    if BARE_RE.match(text):
        return text
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


class _Statement:
    def __init__(self, tokens: list[Token], lineno: int):
        self.tokens = tokens
        self.lineno = lineno
        self.span = SourceSpan(lineno, tokens[0].col, tokens[-1].end)

    def error(self, msg: str, tok: Token | None = None) -> DSLSyntaxError:
        if tok is None:
            return _syntax(msg, self.lineno, self.span.col_start, self.span.col_end)
        return _syntax(msg, self.lineno, tok.col, tok.end)

    def int_(self, tok: Token) -> int:
        if not INT_RE.match(tok.text):
            raise self.error(f"expected an integer, got {tok.text!r}", tok)
        return int(tok.text)

    def tuple_(self, tok: Token, sizes: tuple[int, ...]) -> tuple[int, ...]:
        text = tok.text
        if not (text.startswith("(") and text.endswith(")")):
            raise self.error(f"expected a coordinate tuple, got {text!r}", tok)
        parts = [p.strip() for p in text[1:-1].split(",")]
        if len(parts) not in sizes or not all(INT_RE.match(p) for p in parts):
            raise self.error(f"malformed coordinate tuple {text!r}", tok)
        return tuple(int(p) for p in parts)

    def ref(self, tok: Token) -> ClassRef:
        vals = self.tuple_(tok, (2, 3))
        return ClassRef(*vals)

    def keyvals(self, tokens: list[Token], allowed: set[str]) -> dict[str, tuple[str, Token]]:
        out: dict[str, tuple[str, Token]] = {}
        for tok in tokens:
            key, sep, value = tok.text.partition("=")
            if not sep or not value:
                raise self.error(f"expected key=value, got {tok.text!r}", tok)
            if key not in allowed:
                raise self.error(f"unknown key {key!r}", tok)
            if key in out:
                raise self.error(f"repeated key {key!r}", tok)
            out[key] = (_unquote(value), tok)
        return out


def parse(text: str | bytes) -> Chart:
    """Parse DSL text into a sealed chart."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    chart: Chart | None = None
    names: set[str] = set()
    started = False

    # only \n ends a statement; quoted values may hold other control characters
    for lineno, raw in enumerate(text.split("\n"), start=1):
        raw = raw.removesuffix("\r")
        tokens = _tokenize(_strip_comment(raw), lineno)
        if not tokens:
            continue
        st = _Statement(tokens, lineno)
        head = tokens[0].text
        if chart is None:
            if head != "grading":
                raise st.error("missing grading: the first statement must be 'grading'")
            chart = Chart(_parse_grading(st))
            continue
        try:
            if head == "grading":
                raise st.error("grading declared twice")
            elif head == "lax":
                if len(tokens) != 1:
                    raise st.error("'lax' takes no arguments")
                if started:
                    raise st.error("'lax' must precede all classes and differentials")
                chart.strict_degree = False
            elif head == "class":
                _parse_class(st, chart, names)
            elif head == "d":
                if len(tokens) != 4:
                    raise st.error("usage: d <r> (n,s[,i]) (n',s'[,j])")
                chart.add_differential(st.int_(tokens[1]), st.ref(tokens[2]), st.ref(tokens[3]))
            elif head == "structline":
                if len(tokens) < 3:
                    raise st.error("usage: structline (n,s[,i]) (n',s'[,j]) [label=..] [page=r]")
                kv = st.keyvals(tokens[3:], {"label", "page"})
                page = None
                if "page" in kv:
                    page = st.int_(Token(kv["page"][0], kv["page"][1].col))
                label = kv["label"][0] if "label" in kv else None
                chart.add_structline(st.ref(tokens[1]), st.ref(tokens[2]), label=label, page=page)
            elif head == "replaceclass":
                if len(tokens) != 3:
                    raise st.error("usage: replaceclass (n,s[,i]) page=<r>")
                kv = st.keyvals(tokens[2:], {"page"})
                if "page" not in kv:
                    raise st.error("replaceclass requires page=<r>")
                page = st.int_(Token(kv["page"][0], kv["page"][1].col))
                chart.replace_class(st.ref(tokens[1]), page)
            else:
                raise st.error(f"unknown statement {head!r}", tokens[0])
        except SseqError as err:
            if err.span is None:
                err.span = st.span
            raise
        started = started or head in ("class", "d", "structline", "replaceclass")

    if chart is None:
        raise _syntax("missing grading: input has no statements", 1, 1, 1)
    return chart.seal()


def _parse_grading(st: _Statement) -> Grading:
    tokens = st.tokens
    if len(tokens) < 2:
        raise st.error("usage: grading <name>")
    name = tokens[1].text
    kind = _GRADING_NAMES.get(name)
    if kind is None:
        err = UnknownGrading(f"unknown grading {name!r}")
        err.span = SourceSpan(st.lineno, tokens[1].col, tokens[1].end)
        raise err
    if kind is GradingKind.CUSTOM:
        if len(tokens) != 6:
            raise st.error("usage: grading custom <a> <b> <c> <d>")
        a, b, c, d = (st.int_(t) for t in tokens[2:])
        return Grading.from_coefficients(a, b, c, d)
    if len(tokens) != 2:
        raise st.error(f"grading {name} takes no coefficients")
    return Grading(kind)


def _parse_class(st: _Statement, chart: Chart, names: set[str]) -> None:
    tokens = st.tokens
    if len(tokens) < 2:
        raise st.error("usage: class (n,s) [name=..] [tag=..] [opt key=value ...]")
    stem, fil = st.tuple_(tokens[1], (2,))
    rest = tokens[2:]
    opt_at = next((i for i, t in enumerate(rest) if t.text == "opt"), None)
    head, opts = (rest, []) if opt_at is None else (rest[:opt_at], rest[opt_at + 1 :])
    kv = st.keyvals(head, {"name", "tag"})
    for key in ("name", "tag"):
        if key in kv and not NAME_RE.match(kv[key][0]):
            raise st.error(f"invalid {key} {kv[key][0]!r}", kv[key][1])
    options: dict[str, str] = {}
    for tok in opts:
        key, sep, value = tok.text.partition("=")
        if not sep or not KEY_RE.match(key) or not value:
            raise st.error(f"expected key=value option, got {tok.text!r}", tok)
        if key in options:
            raise st.error(f"repeated option {key!r}", tok)
        options[key] = _unquote(value)
    name = kv["name"][0] if "name" in kv else None
    if name is not None:
        if name in names:
            err = DuplicateName(f"class name {name!r} already used")
            err.span = SourceSpan(st.lineno, kv["name"][1].col, kv["name"][1].end)
            raise err
        names.add(name)
    chart.add_class(
        (stem, fil), name=name, tag=kv["tag"][0] if "tag" in kv else None, options=options
    )


def _fmt_ref(ref: ClassRef) -> str:
    return f"({ref.stem},{ref.filtration},{ref.index})"


def serialize(chart: Chart, *, period: tuple[int, int] | None = None) -> str:
    """Canonical text form; deterministic for structurally equal charts."""
    lines = []
    if period is not None:
        lines.append(f"# period ({period[0]},{period[1]})")
    g = chart.grading
    if g.kind is GradingKind.CUSTOM:
        lines.append("grading custom " + " ".join(str(x) for x in g.coefficients))
    else:
        lines.append(f"grading {g.kind.value}")
    if not chart.strict_degree:
        lines.append("lax")

    for ref in sorted(chart.classes):
        cls = chart.classes[ref]
        parts = [f"class ({ref.stem},{ref.filtration})"]
        if cls.name is not None:
            parts.append(f"name={cls.name}")
        if cls.tag is not None:
            parts.append(f"tag={cls.tag}")
        if cls.options:
            parts.append("opt")
            parts.extend(f"{k}={_quote(v)}" for k, v in sorted(cls.options.items()))
        lines.append(" ".join(parts))

    replacements: dict[int, list[ClassRef]] = {}
    for ref in sorted(chart.classes):
        for gen in chart.classes[ref].generations[1:]:
            replacements.setdefault(gen.born - 1, []).append(ref)
    diffs_by_page: dict[int, list] = {}
    for d in chart.differentials:
        diffs_by_page.setdefault(d.page, []).append(d)
    for page in sorted(set(replacements) | set(diffs_by_page)):
        for d in sorted(diffs_by_page.get(page, [])):
            lines.append(f"d {d.page} {_fmt_ref(d.source)} {_fmt_ref(d.target)}")
        for ref in replacements.get(page, []):
            lines.append(f"replaceclass {_fmt_ref(ref)} page={page}")

    for s in sorted(chart.structlines, key=StructLine.sort_key):
        parts = ["structline", _fmt_ref(s.source), _fmt_ref(s.target)]
        if s.label is not None:
            parts.append(f"label={_quote(s.label)}")
        default = max(chart.classes[s.source].latest.born, chart.classes[s.target].latest.born)
        if s.born_page != default:
            parts.append(f"page={s.born_page}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def read_period(text: str) -> tuple[int, int] | None:
    """Return the ``# period (dn,ds)`` header of a pattern file, if any."""
    for raw in text.splitlines():
        m = PERIOD_RE.match(raw.strip())
        if m:
            return int(m.group(1)), int(m.group(2))
        if raw.strip() and not raw.strip().startswith("#"):
            break
    return None
