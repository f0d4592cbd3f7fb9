/* nomadbs - transmit-power minimization for downlink NOMA over distributed antennas
 * Copyright (C) 2026 the nomadbs developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 *
 * C interface of the nomadbs shared library. All entry points return a
 * status code; on failure, nomadbs_last_error() describes the problem for
 * the calling thread. Strings returned through char** out-parameters are
 * owned by the caller and released with nomadbs_string_free().
 */

#ifndef NOMADBS_H
#define NOMADBS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nomadbs_status {
  NOMADBS_OK = 0,
  NOMADBS_ERR_BAD_ARGUMENT = 1,
  NOMADBS_ERR_INVALID_CONFIG = 2,
  NOMADBS_ERR_IO = 3,
  NOMADBS_ERR_INTERNAL = 4
} nomadbs_status;

/* Opaque campaign configuration: system parameters, method list, sweep. */
typedef struct nomadbs_config nomadbs_config;

const char* nomadbs_version(void);

/* Thread-local message for the most recent failure. */
const char* nomadbs_last_error(void);

void nomadbs_string_free(char* s);

/* --- configuration ----------------------------------------------------- */

nomadbs_status nomadbs_config_load(const char* path, nomadbs_config** out);
nomadbs_status nomadbs_config_parse(const char* json_text, nomadbs_config** out);
void nomadbs_config_free(nomadbs_config* config);

/* Normalized system parameters of the config as a JSON string. */
nomadbs_status nomadbs_config_params_json(const nomadbs_config* config, char** json_out);

/* --- campaigns ---------------------------------------------------------- */

/* Runs the configured Monte Carlo campaign and writes one CSV row per
 * (method, sweep point, trial).
 *   output_csv    destination path; NULL uses the config's "output" entry.
 *   workers       worker threads; <= 0 picks the hardware concurrency.
 *   seed_override >= 0 replaces the config seed.
 *   record_timing nonzero to record wall clock per cell; zero writes 0 so
 *                 equal configs produce byte-identical files.
 *   summary_out   optional aggregated table (text).
 *   audit_failures_out optional count of trials failing the rate or
 *                 multiplexing audit. */
nomadbs_status nomadbs_campaign_run(const nomadbs_config* config, const char* output_csv,
                                    int workers, long long seed_override,
                                    int record_timing, char** summary_out,
                                    int* audit_failures_out);

/* Aggregates an existing campaign CSV into the summary table. */
nomadbs_status nomadbs_summarize_file(const char* csv_path, char** table_out);

/* Writes the channel tensor of one trial (geometry, pathloss, shadowing,
 * fading all replayed from the config seed) as CSV. */
nomadbs_status nomadbs_dump_channel(const nomadbs_config* config, int trial,
                                    const char* out_path);

/* --- verification ------------------------------------------------------- */

/* Re-runs one of the independent-oracle comparison batches:
 * "waterfill" | "lpo-grid" | "opad-grid" | "greedy-gap".
 * count <= 0 selects each batch's default size. */
nomadbs_status nomadbs_oracle_report(const char* name, int count,
                                     unsigned long long seed, char** report_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NOMADBS_H */
