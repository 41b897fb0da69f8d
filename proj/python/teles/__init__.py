# Copyright 2026 The teles Authors. All Rights Reserved.
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

"""Word-level confidence estimation with TeLeS targets."""

from ._core import (  # noqa: F401
    Alphabet,
    WlcModel,
    WordSpan,
    align,
    calibration,
    cer,
    decode_words,
    divergences,
    greedy_decode,
    lexeme_score,
    load_alphabet,
    run_cli,
    shrinkage_loss,
    teles_score,
    temporal_score,
    wer,
)
