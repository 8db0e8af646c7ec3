"""kbalance command line: build, generate, colour, analyze and verify balanced sequences."""

import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import click
from pydantic import ValidationError

from kbalance import analyzers, builder, oracle
from kbalance.colouring import colour
from kbalance.config import get_settings, load_manifest
from kbalance.constant_gap import (
    GapSpec,
    enumerate_constant_gap_periods,
    equal_frequency_pair,
    gap_stream,
    is_constant_gap,
    one_balanced_frequency_forms,
)
from kbalance.errors import GrammarError, InvalidInputError, InvariantViolation, RangeError
from kbalance.exact_arith import ZERO, parse, parse_vector
from kbalance.formatter import FORMATS, ReportFormatter
from kbalance.generators import open_stream, parse_generator
from kbalance.mechanical import MechanicalParams, mechanical_stream
from kbalance.schemas import MetricName
from kbalance.sequences import FrequencyVector, SequenceStream, Word, WordStream, read_word, take_prefix, write_word

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LEMMA_CHOICES = ("plus1", "freq-exists", "constant-gap", "main-theorem", "equal-frequency", "hubert", "sturmian", "oracle")

# Manifest keys that differ from the option's parameter name
_MANIFEST_ALIASES = {"n": "length", "format": "fmt"}


def _manifest_defaults(values: Dict[str, Any]) -> Dict[str, Any]:
    flat = {}
    for key, value in values.items():
        key = key.lower().replace("-", "_")
        flat[_MANIFEST_ALIASES.get(key, key)] = value
    defaults: Dict[str, Any] = {name: dict(flat) for name in main.commands}
    defaults["cgap"] = {name: dict(flat) for name in cgap.commands}
    return defaults


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        click.echo(text, nl=not text.endswith("\n"))
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8", newline="\n")
    logger.info(f"[CLI] Wrote {out}")


def _emit_word(w: Word, out: Optional[Path]) -> None:
    if out is None:
        click.echo(w.render())
    else:
        write_word(out, w)
        logger.info(f"[CLI] Wrote {len(w)} symbols to {out}")


def _open_source(text: str) -> SequenceStream:
    """A generator spec, or a word file read as a finite source"""
    if Path(text).is_file():
        return WordStream(read_word(Path(text)))
    return open_stream(parse_generator(text))


def _window(w: Word, nmax: Optional[int]) -> int:
    return min(nmax if nmax is not None else get_settings().window_limit, len(w))


def _target(w: Word, text: str) -> FrequencyVector:
    """Target frequencies numbered from letter 0 for an a/b word, from 1 otherwise"""
    start = w.alphabet.symbols[0] if w.alphabet.labels is not None else 1
    return FrequencyVector.of(parse_vector(text), start=start)


@click.group()
@click.option("--config", "config_path", type=click.Path(path_type=Path), default=None,
              help="key=value manifest whose keys name options; explicit flags win.")
@click.option("--verbose", "-v", is_flag=True, help="Log progress to stderr.")
@click.pass_context
def main(ctx: click.Context, config_path: Optional[Path], verbose: bool):
    """Balanced sequences with prescribed letter frequencies."""
    settings = get_settings()
    level = logging.INFO if verbose else getattr(logging, settings.log_level.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger("kbalance").setLevel(level)
    ctx.default_map = _manifest_defaults(load_manifest(config_path))


@main.command()
@click.option("--freqs", required=True, help='Frequency vector, e.g. "1/2,1/3,1/6" or "(3-sqrt(5))/2,(-1+sqrt(5))/2".')
@click.option("-N", "--length", type=int, default=None, help="Prefix length [default: KBAL_PREFIX_LENGTH].")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Write the word here instead of stdout.")
@click.option("--plan", "show_plan", is_flag=True, help="Print the recursion tree to stderr.")
def build(freqs: str, length: Optional[int], out: Optional[Path], show_plan: bool):
    """Prefix of a ceil(log2 d)-balanced sequence with the given frequencies."""
    f = FrequencyVector.parse(freqs)
    length = get_settings().prefix_length if length is None else length
    if show_plan:
        click.echo(builder.describe(builder.plan(f)), err=True)
    _emit_word(builder.build_prefix(f, length), out)


@main.command()
@click.option("--alpha", required=True, help="Slope in (0, 1).")
@click.option("--rho", default="0", show_default=True, help="Intercept in [0, 1).")
@click.option("-N", "--length", type=int, default=None, help="Prefix length [default: KBAL_PREFIX_LENGTH].")
@click.option("--out", type=click.Path(path_type=Path), default=None)
def mechanical(alpha: str, rho: str, length: Optional[int], out: Optional[Path]):
    """Lower mechanical word over a/b."""
    params = MechanicalParams(alpha=parse(alpha), rho=parse(rho) if rho else ZERO)
    length = get_settings().prefix_length if length is None else length
    _emit_word(take_prefix(mechanical_stream(params), length), out)


@main.command("colour")
@click.option("--u", "u_source", required=True, help="Binary word file or generator spec, e.g. mech:(3-sqrt(5))/2.")
@click.option("--a", "a_source", required=True, help="Word file or generator spec for the first letter, e.g. gap:121314.")
@click.option("--b", "b_source", required=True, help="Word file or generator spec for the second letter, e.g. gap:56.")
@click.option("-N", "--length", type=int, default=None, help="Prefix length [default: |u| for a file, else KBAL_PREFIX_LENGTH].")
@click.option("--out", type=click.Path(path_type=Path), default=None)
def colour_command(u_source: str, a_source: str, b_source: str, length: Optional[int], out: Optional[Path]):
    """colour(u, a, b): the n-th a of u becomes a_n, the n-th b becomes b_n."""
    u = _open_source(u_source)
    if length is None:
        length = len(u.word) if isinstance(u, WordStream) else get_settings().prefix_length
    v = colour(u, _open_source(a_source), _open_source(b_source))
    _emit_word(take_prefix(v, length), out)


@main.group()
def cgap():
    """Constant gap periods."""


@cgap.command("check")
@click.argument("period")
@click.pass_context
def cgap_check(ctx: click.Context, period: str):
    """Exit 0 and print the gaps if PERIOD is constant gap, else exit 1 with a witness."""
    word = Word.parse(period)
    result = is_constant_gap(word)
    if not result:
        click.echo(f"not constant gap: {result.witness.describe()}")
        ctx.exit(1)
    gaps = " ".join(f"{letter}:{gap}" for letter, gap in sorted(result.gaps.items()))
    click.echo(f"constant gap: {gaps}")
    pair = equal_frequency_pair(word)
    if pair is not None:
        click.echo(f"equal frequency letters: {pair[0]},{pair[1]}")


@cgap.command("stream")
@click.argument("period")
@click.option("-N", "--length", type=int, default=None)
@click.option("--out", type=click.Path(path_type=Path), default=None)
def cgap_stream(period: str, length: Optional[int], out: Optional[Path]):
    """Prefix of PERIOD^omega."""
    spec = GapSpec(period=Word.parse(period).letters)
    length = get_settings().prefix_length if length is None else length
    _emit_word(take_prefix(gap_stream(spec), length), out)


@cgap.command("list")
@click.option("--max-length", type=int, default=8, show_default=True)
@click.option("--max-letters", type=int, default=3, show_default=True)
@click.option("--min-letters", type=int, default=1, show_default=True)
def cgap_list(max_length: int, max_letters: int, min_letters: int):
    """Every constant gap period up to renaming and rotation."""
    for period in enumerate_constant_gap_periods(max_length, max_letters, min_letters):
        click.echo(period.render())


@cgap.command("forms")
@click.argument("d", type=int)
@click.option("--max-length", type=int, default=12, show_default=True)
def cgap_forms(d: int, max_length: int):
    """Frequency shapes of d-ary colourings of a Sturmian word by constant gap pairs."""
    for form in one_balanced_frequency_forms(d, max_length):
        click.echo(form.describe())


@main.command()
@click.argument("wordfile", type=click.Path(path_type=Path))
@click.option("--balance", is_flag=True, help="Per-letter deficiency for every window length.")
@click.option("--complexity", is_flag=True, help="Factor complexity C(n).")
@click.option("--freq", is_flag=True, help="Empirical letter frequencies.")
@click.option("--discrepancy", "target", default=None, help="Prefix discrepancy against this frequency vector.")
@click.option("--period", is_flag=True, help="Smallest period, if the word repeats it at least three times.")
@click.option("--nmax", type=int, default=None, help="Largest window length [default: KBAL_WINDOW_LIMIT].")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None)
def analyze(wordfile: Path, balance: bool, complexity: bool, freq: bool, target: Optional[str],
            period: bool, nmax: Optional[int], fmt: str, out: Optional[Path]):
    """Measure balance, complexity, frequencies, discrepancy and period of a word file."""
    w = read_word(wordfile)
    if not (balance or complexity or freq or target or period):
        balance = complexity = freq = True
    if len(w) == 0:
        raise RangeError(f"{wordfile} holds the empty word")
    report = analyzers.collect_metrics(
        w,
        n_max=_window(w, nmax),
        balance=balance,
        complexity=complexity,
        frequencies=freq,
        target=_target(w, target) if target else None,
        period=period,
        title=f"analysis of {wordfile.name}",
    )
    _emit(ReportFormatter.render(report, fmt), out)


@main.command()
@click.option("--lemma", type=click.Choice(LEMMA_CHOICES), default=None, help="Lemma family to check.")
@click.option("--trials", type=int, default=None, help="Random instances [default: KBAL_VERIFY_TRIALS].")
@click.option("--seed", type=int, default=None, help="Random seed [default: KBAL_VERIFY_SEED].")
@click.option("-N", "--length", type=int, default=None, help="Prefix length per instance [default: KBAL_VERIFY_LENGTH].")
@click.option("--against-oracle", "wordfile", type=click.Path(path_type=Path), default=None,
              help="Compare optimized analyzers with brute force on this word.")
@click.option("--nmax", type=int, default=None, help="Window bound for --against-oracle.")
def verify(lemma: Optional[str], trials: Optional[int], seed: Optional[int], length: Optional[int],
           wordfile: Optional[Path], nmax: Optional[int]):
    """Check a lemma on generated instances, or the analyzers on a user word."""
    settings = get_settings()
    if wordfile is not None:
        w = read_word(wordfile)
        if len(w) > settings.oracle_max_length:
            raise RangeError(f"oracle words are limited to {settings.oracle_max_length} symbols, got {len(w)}")
        result = oracle.verify_word_against_oracle(w, _window(w, nmax))
    elif lemma is not None:
        result = oracle.run_lemma(
            lemma,
            settings.verify_trials if trials is None else trials,
            settings.verify_seed if seed is None else seed,
            settings.verify_length if length is None else length,
        )
    else:
        raise click.UsageError("give --lemma or --against-oracle")
    click.echo(ReportFormatter.format_lemma(result), nl=False)
    if not result.passed:
        raise InvariantViolation(f"{result.lemma} failed on {len(result.failures)} instance(s)")


@main.command()
@click.option("--freqs", required=True, help="Frequency vector of the constructed sequence.")
@click.option("-N", "--length", type=int, default=None, help="Prefix length [default: KBAL_PREFIX_LENGTH].")
@click.option("--nmax", type=int, default=None, help="Largest window length [default: KBAL_WINDOW_LIMIT].")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None)
def report(freqs: str, length: Optional[int], nmax: Optional[int], fmt: str, out: Optional[Path]):
    """Build a prefix and report measured against proven bounds in one table."""
    f = FrequencyVector.parse(freqs)
    length = get_settings().prefix_length if length is None else length
    if length < 2:
        raise RangeError(f"report needs a prefix of at least 2 symbols, got {length}")
    w = builder.build_prefix(f, length)
    n_max = _window(w, nmax)
    metrics = analyzers.collect_metrics(w, n_max, target=f, period=True, title=f"report for f=({f.render()})")
    metrics.add(MetricName.CERTIFIED_K, builder.certified_k(f.d))
    for letter, value in f.entries.items():
        metrics.add(MetricName.TARGET_FREQUENCY, value, letter=letter)
    for n in range(n_max + 1):
        metrics.add(MetricName.COMPLEXITY_BOUND, builder.complexity_bound(f.d, n), n=n)
    metrics.notes.append(f"certified k = ceil(log2 {f.d}) = {builder.certified_k(f.d)}")
    _emit(ReportFormatter.render(metrics, fmt), out)


def run(argv: Optional[List[str]] = None) -> int:
    """Run one command and map failures to exit codes: 1 for bad input, 2 for internal errors"""
    try:
        rv = main.main(args=argv, prog_name="kbalance", standalone_mode=False)
        return rv if isinstance(rv, int) else 0
    except click.ClickException as e:
        click.echo(f"usage error: {e.format_message()}", err=True)
        return 1
    except click.Abort:
        click.echo("usage error: aborted", err=True)
        return 1
    except GrammarError as e:
        click.echo(f"grammar error: {e}", err=True)
        return 1
    except (InvalidInputError, ValidationError, ZeroDivisionError) as e:
        click.echo(f"validation error: {e}", err=True)
        return 1
    except OSError as e:
        click.echo(f"io error: {e}", err=True)
        return 1
    except InvariantViolation as e:
        click.echo(f"internal error: {e}", err=True)
        return 2
    except Exception as e:
        logger.exception(f"[CLI] Unexpected failure: {e}")
        click.echo(f"internal error: {e}", err=True)
        return 2


def console_main() -> None:
    sys.exit(run(sys.argv[1:]))
