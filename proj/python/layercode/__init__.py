# Copyright 2026 The layercode Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Layer codes: construction, decoders and benchmarks."""

from ._layercode import (
    CssCode,
    Decoder,
    LayerCode,
    build,
    ensemble_manifest,
    fit_memory_csv,
    import_layer_code,
    memory_csv,
    threshold_csv,
)

__all__ = [
    "CssCode",
    "Decoder",
    "LayerCode",
    "build",
    "ensemble_manifest",
    "fit_memory_csv",
    "import_layer_code",
    "memory_csv",
    "threshold_csv",
]
