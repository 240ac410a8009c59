// Copyright 2026 The tsobs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/* Compiled as C to keep the public header C-clean. */

#include "tsobs/tsobs.h"

int tsobs_c_header_smoke(void) {
  tsobs_estimator* e = 0;
  if (tsobs_estimator_create(2, &e) != TSOBS_OK) return 1;
  tsobs_estimator_record(e, 1);
  size_t best = 0;
  tsobs_status st = tsobs_estimator_point_estimate(e, &best);
  tsobs_estimator_free(e);
  return (st == TSOBS_OK && best == 1) ? 0 : 2;
}
