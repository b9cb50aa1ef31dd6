import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence

import pandas as pd

from src.domain.dualcc import Configuration, ProfileReport

logger = logging.getLogger(__name__)


def write_frame(frame: pd.DataFrame, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.debug(f"Wrote {path} ({len(frame)} rows)")
    return path


def profile_frame(report: ProfileReport) -> pd.DataFrame:
    return report.to_frame()


def inventory_frame(inventory: Dict[str, Dict[str, int]]) -> pd.DataFrame:
    rows = [{"variant": variant, **counts} for variant, counts in sorted(inventory.items())]
    return pd.DataFrame(rows, columns=["variant", "total", "complete", "incomplete"])


def configurations_frame(configurations: Sequence[Configuration], label=repr) -> pd.DataFrame:
    rows: List[Dict[str, Any]] = []
    for conf in configurations:
        rows.append({
            "walls": " ".join(str(w) for w in conf.walls),
            "size": len(conf.walls),
            "variants": " ".join(conf.variants),
            "certificate": label(conf.certificate) if conf.certificate is not None else "",
            "certificate_kind": conf.certificate_kind or "",
        })
    return pd.DataFrame(rows, columns=["walls", "size", "variants", "certificate", "certificate_kind"])
