#!/usr/bin/env python3
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
"""Writes random label-pair sequences with reference kappa values.

The reference values come from scikit-learn, which shares no code with the
C++ implementation. Usage: python3 generate.py
"""

import json
import os
import random

from sklearn.metrics import cohen_kappa_score

LABELS = ["patient", "named individual", "occupation", "author", "animal",
          "other"]


def main():
    rng = random.Random(20260101)
    here = os.path.dirname(os.path.abspath(__file__))
    with open(os.path.join(here, "oracle.jsonl"), "w") as out:
        written = 0
        while written < 100:
            n = rng.randint(1, 50)
            k = rng.randint(1, 6)
            pool = rng.sample(LABELS, k)
            a = [rng.choice(pool) for _ in range(n)]
            # Bias b toward a so kappa covers the positive range too.
            agree = rng.random()
            b = [x if rng.random() < agree else rng.choice(LABELS) for x in a]
            if len(set(a)) == 1 and a == b:
                continue  # chance agreement of 1; kappa undefined
            kappa = cohen_kappa_score(a, b, labels=LABELS)
            out.write(json.dumps({"a": a, "b": b, "kappa": float(kappa)}) + "\n")
            written += 1


if __name__ == "__main__":
    main()
