# SPDX-License-Identifier: Apache-2.0
"""Chain-of-instructions dataset pipeline and evaluation tools."""

import json as _json
import os as _os
import pathlib as _pathlib

# An installed wheel ships its prompts, rules and language profiles here.
_SHARE = _pathlib.Path(__file__).resolve().parent / "share"
if (_SHARE / "prompts").is_dir():
    _os.environ.setdefault("COI_DATA_DIR", str(_SHARE))

from ._coi import (  # noqa: E402
    CoiError,
    ConfigError,
    IoError,
    LanguageIdentifier,
    ParseError,
    RougeScore,
    ThrottledError,
    TransportError,
    ValidationError,
    __version__,
    contains_hop_marker,
    data_dir,
    dataset_report_json as _coi_report,
    extract_hop_spans,
    parse_target,
    render_target,
    rouge_l,
    run,
    split_by_language,
    split_by_marker,
    tokenize,
    tokenizer_version,
)


def dataset_report(path):
    """Per-length split counts and instruction statistics of a dataset JSONL file."""
    return _json.loads(_coi_report(str(path)))


def main(argv=None):
    """Console entry point mirroring the native `coi` executable."""
    import sys

    code, out, err = run(list(sys.argv[1:] if argv is None else argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


__all__ = [name for name in dir() if not name.startswith("_")]
