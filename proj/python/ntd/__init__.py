# python/ntd/__init__.py

# Copyright 2026  The ntd Authors

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
# WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
# MERCHANTABLITY OR NON-INFRINGEMENT.
# See the Apache 2 License for the specific language governing permissions and
# limitations under the License.

"""Nonnegative Tucker decomposition for bar-level music segmentation."""

from ._core import (
    ArgumentError,
    DomainError,
    ParseError,
    __version__,
    bar_autosimilarity,
    beta_div,
    build_tfb,
    decompose,
    evaluate_boundaries,
    fold,
    gamma_exponent,
    init_factors,
    iterate,
    mel_filterbank,
    mode_product,
    multiway_product,
    novelty_curve,
    objective,
    run_cli,
    segment_bars,
    unfold,
)
