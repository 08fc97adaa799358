/*
 * Copyright 2026 The setfn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* The header must compile as C. */
#include <stdio.h>
#include <string.h>

#include "setfn/setfn.h"

int main(void) {
  double v = 0.0;
  setfn_setfunction* phi = NULL;
  char* json = NULL;
  if (setfn_kp(1.0, &v) != SETFN_OK || v != 1.0) return 1;
  if (setfn_setfunction_from_json("{\"n\": 1, \"values\": [0, 2]}", &phi) != SETFN_OK) return 2;
  if (setfn_extract(phi, SETFN_EXTRACT_DOMINATING, 1, 0, 1e-9, &json) != SETFN_OK) return 3;
  if (strstr(json, "\"objective\"") == NULL) return 4;
  setfn_string_free(json);
  setfn_setfunction_free(phi);
  if (setfn_kp(0.0, &v) != SETFN_ERR_INVALID_ARGUMENT) return 5;
  printf("%s\n", setfn_last_error());
  return 0;
}
