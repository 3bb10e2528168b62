from pathlib import Path

import yaml


def block_presenter(dumper: yaml.SafeDumper, data: str) -> yaml.ScalarNode:
    """Multi-line strings (warning lists, error traces) as | blocks, everything else plain."""
    style = "|" if "\n" in data else None
    return dumper.represent_scalar("tag:yaml.org,2002:str", data, style=style)


class SummaryDumper(yaml.SafeDumper):
    pass


SummaryDumper.add_representer(str, block_presenter)


def summary_path(report_path: Path) -> Path:
    return report_path.with_suffix(".yaml")


def write_summary(summary: dict, report_path: Path) -> Path:
    """Write the human-readable run summary next to the CSV report; returns its path."""
    path = summary_path(report_path)
    text = yaml.dump(summary, Dumper=SummaryDumper, default_flow_style=False, allow_unicode=True, sort_keys=False)
    path.write_text(text, encoding="utf-8")
    return path
