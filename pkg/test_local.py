#!/usr/bin/env python3
"""
kbalance - Local Pipeline Script
Runs the whole pipeline in-process: colour a Sturmian word, analyze it,
build a d-ary sequence and report measured against certified bounds.
"""

import json
import logging
import sys
from pathlib import Path

from kbalance import analyzers, builder
from kbalance.colouring import colour, project
from kbalance.constant_gap import GapSpec, gap_stream, is_constant_gap
from kbalance.exact_arith import FieldElement
from kbalance.formatter import ReportFormatter
from kbalance.mechanical import MechanicalParams, mechanical_stream
from kbalance.schemas import MetricName
from kbalance.sequences import FrequencyVector, Word, WordStream, take_prefix

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

GOLDEN = FieldElement(3, -1, 2, 5)
U = "aabaababaabaababaababaabaababaabaab"
V = "12513615416215361451621531645126135"


def run_pipeline(length: int = 3000, n_max: int = 100) -> dict:
    """Colour, analyze, build and report; returns a summary of what was measured"""
    summary = {}

    # Sturmian u coloured by two constant gap sequences
    a_spec, b_spec = GapSpec(period=(1, 2, 1, 3, 1, 4)), GapSpec(period=(5, 6))
    assert is_constant_gap(Word(a_spec.period)) and is_constant_gap(Word(b_spec.period))
    example = take_prefix(colour(WordStream(Word.parse(U)), gap_stream(a_spec), gap_stream(b_spec)), len(U))
    logger.info(f"✓ Coloured example: {example.render()}")
    summary["colour_prefix"] = example.render()
    summary["projection_ok"] = project(example, ({1, 2, 3, 4}, {5, 6})) == Word.parse(U)
    v = take_prefix(colour(mechanical_stream(MechanicalParams(alpha=GOLDEN)), gap_stream(a_spec), gap_stream(b_spec)), length)
    summary["colour_k"] = analyzers.measured_k(v, n_max)

    # Built sequence against its certified bound
    f = FrequencyVector.parse("1/2,1/3,1/6")
    w = builder.build_prefix(f, length)
    report = analyzers.collect_metrics(w, n_max, target=f, period=True, title="local pipeline")
    report.add(MetricName.CERTIFIED_K, builder.certified_k(f.d))
    summary["built_k"] = int(report.values(MetricName.MEASURED_K)[0].value)
    summary["certified_k"] = builder.certified_k(f.d)
    summary["complexity_within_bound"] = all(
        int(r.value) <= builder.complexity_bound(f.d, r.n) for r in report.values(MetricName.COMPLEXITY)
    )
    summary["table"] = ReportFormatter.generate_table(report)
    return summary


def test_local_pipeline():
    summary = run_pipeline(length=2000, n_max=60)
    assert summary["colour_prefix"] == V
    assert summary["projection_ok"]
    assert summary["colour_k"] == 1
    assert summary["built_k"] <= summary["certified_k"] == 2
    assert summary["complexity_within_bound"]
    assert "LOCAL PIPELINE" in summary["table"]


def main():
    logger.info("=" * 90)
    logger.info("KBALANCE - LOCAL PIPELINE")
    logger.info("=" * 90)

    try:
        summary = run_pipeline()
        print("\n" + summary.pop("table"))

        output_file = Path("pipeline_result.json")
        output_file.write_text(json.dumps(summary, indent=2))
        logger.info(f"✓ Output saved to {output_file}")

        logger.info("\n" + "=" * 90)
        logger.info("PIPELINE COMPLETED SUCCESSFULLY")
        logger.info("=" * 90)

    except Exception as e:
        logger.error(f"Error during pipeline: {str(e)}", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
