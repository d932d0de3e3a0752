# Copyright 2026 The seqbatch Authors. All Rights Reserved.
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
"""Bucketed batching, deterministic loading and model zoo queries."""

from ._seqbatch import *  # noqa: F401,F403
from ._seqbatch import (  # noqa: F401
    DataError,
    Error,
    IncompleteRecordError,
    IntegrityError,
    NotFoundError,
    SchemaError,
)

__version__ = "0.1.0"

import os as _os

from . import _seqbatch

# Wheels ship the seed catalog next to the extension; source builds use the
# copy in the repository.
_PACKAGED_CATALOG = _os.path.join(_os.path.dirname(__file__), "zoo_catalog.json")


def default_catalog_path():
    if _os.path.exists(_PACKAGED_CATALOG):
        return _PACKAGED_CATALOG
    return _seqbatch.default_catalog_path()


def run_cli(args):
    """Runs the command line; returns (exit_code, stdout, stderr)."""
    args = list(args)
    if (args[:1] == ["zoo"] and "--catalog" not in args
            and "SEQBATCH_CATALOG" not in _os.environ):
        args += ["--catalog", default_catalog_path()]
    return _seqbatch.run_cli(args)
