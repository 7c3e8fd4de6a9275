"""Render a pipeline report as delimited text plus a figure.

Writes `pipeline_report.tsv` (one row per stage) and `pipeline_stages.png`
(edge counts across the rewrite stages) into the requested directory.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

from .cliquewidth import PipelineReport


def write_pipeline_report(report: PipelineReport, outdir: str) -> tuple[str, str]:
    import matplotlib.pyplot as plt

    os.makedirs(outdir, exist_ok=True)
    stages = report.stages
    tsv_path = os.path.join(outdir, "pipeline_report.tsv")
    with open(tsv_path, "w", encoding="utf-8") as fh:
        fh.write("stage\tvertices\tedges\n")
        for name, n, m in stages:
            fh.write(f"{name}\t{n}\t{m}\n")
        fh.write(f"decomposition_width\t\t{report.decomposition_width}\n")
        fh.write(f"answer\t\t{'yes' if report.answer else 'no'}\n")

    names = [s[0] for s in stages]
    edges = [s[2] for s in stages]
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    bars = ax.bar(names, edges, color="#4878a8")
    ax.bar_label(bars)
    ax.set_ylabel("edges")
    ax.set_title(
        f"rewrite pipeline (width {report.decomposition_width}, "
        f"answer {'yes' if report.answer else 'no'})"
    )
    fig.tight_layout()
    png_path = os.path.join(outdir, "pipeline_stages.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return tsv_path, png_path
