# Copyright 2026 The Neutrapipe Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the neutrapipe C++ core.

Records are plain dicts in the same shape as the JSONL files.
"""

import os as _os

_data = _os.path.join(_os.path.dirname(__file__), "data")
if _os.path.isdir(_data):
    _os.environ.setdefault("NEUTRAPIPE_DATA_DIR", _data)

from ._core import (  # noqa: E402
    ArgumentError,
    ConfigError,
    Error,
    IntegrityError,
    Lexicon,
    OracleError,
    candidates_for_role,
    classification_metrics,
    cohen_kappa,
    compare_models,
    neutralize_abstract,
    prompt_hash,
    revert_edits,
    run_cli,
    run_masking_eval,
    scan_abstract,
    split_sentences,
)

__all__ = [
    "ArgumentError",
    "ConfigError",
    "Error",
    "IntegrityError",
    "Lexicon",
    "OracleError",
    "candidates_for_role",
    "classification_metrics",
    "cohen_kappa",
    "compare_models",
    "neutralize_abstract",
    "prompt_hash",
    "revert_edits",
    "run_cli",
    "run_masking_eval",
    "scan_abstract",
    "split_sentences",
]
