/* C interface to the wigest library. All handles are opaque; every call that can
 * fail returns a wg_status and leaves a message readable via wg_last_error() on
 * the calling thread. Strings returned through char** are freed with
 * wg_string_free. */
#ifndef WIGEST_WIGEST_H
#define WIGEST_WIGEST_H

#include <stddef.h>
#include <stdint.h>

#if defined(WIGEST_BUILDING)
#define WG_API __attribute__((visibility("default")))
#else
#define WG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wg_status {
  WG_OK = 0,
  WG_INVALID_ARGUMENT,
  WG_MALFORMED_LINE,
  WG_NON_MONOTONIC_TIMESTAMP,
  WG_SUBCARRIER_COUNT_MISMATCH,
  WG_MISSING_META,
  WG_EMPTY_TRACE,
  WG_TOO_FEW_POINTS,
  WG_GAP_TOO_LARGE,
  WG_SIGNAL_TOO_SHORT,
  WG_INSUFFICIENT_QUIET_SIGNAL,
  WG_TOO_FEW_PEAKS,
  WG_BAD_KIND,
  WG_BAD_RANGE,
  WG_OUT_OF_ORDER_EVENT,
  WG_ZERO_DURATION,
  WG_MISSING_LABELS,
  WG_IO
} wg_status;

typedef struct wg_config wg_config;
typedef struct wg_trace wg_trace;
typedef struct wg_labels wg_labels;
typedef struct wg_events wg_events;

typedef struct wg_event_info {
  const char *gesture; /* static string: push, pull, punch, lever or unknown */
  double start_ms;
  double end_ms;
  size_t peak_count;
  double max_height;
} wg_event_info;

WG_API const char *wg_status_name(wg_status status);
/* Message of the last failed call on this thread; empty if none. */
WG_API const char *wg_last_error(void);
WG_API void wg_string_free(char *s);

WG_API wg_status wg_config_new(wg_config **out);
/* Applies JSON overrides; on error the config is unchanged. */
WG_API wg_status wg_config_apply_json(wg_config *cfg, const char *json);
WG_API wg_status wg_config_set_noise_sigma(wg_config *cfg, double sigma);
WG_API wg_status wg_config_set_packet_rate(wg_config *cfg, double pps);
WG_API void wg_config_free(wg_config *cfg);

/* kind: push, pull, punch or lever. */
WG_API wg_status wg_synth_gesture(const wg_config *cfg, const char *kind, uint64_t seed,
                                  wg_trace **trace, wg_labels **labels);
/* All four gestures cycled n_per_gesture times with idle gaps. */
WG_API wg_status wg_synth_session(const wg_config *cfg, int n_per_gesture, uint64_t seed,
                                  wg_trace **trace, wg_labels **labels);
WG_API wg_status wg_synth_ambient(const wg_config *cfg, double minutes, uint64_t seed,
                                  wg_trace **trace, wg_labels **labels);

WG_API wg_status wg_trace_read(const char *path, wg_trace **out);
WG_API wg_status wg_trace_parse(const char *text, size_t len, wg_trace **out);
WG_API wg_status wg_trace_write(const wg_trace *trace, const char *path);
WG_API size_t wg_trace_sample_count(const wg_trace *trace);
WG_API double wg_trace_duration_s(const wg_trace *trace);
WG_API void wg_trace_free(wg_trace *trace);

WG_API wg_status wg_labels_read(const char *path, wg_labels **out);
WG_API wg_status wg_labels_write(const wg_labels *labels, const char *path);
WG_API size_t wg_labels_count(const wg_labels *labels);
WG_API void wg_labels_free(wg_labels *labels);

/* agg: mean, rssi or sub:<k>; gate: none, single or double (NULL uses the config);
 * rate_hz <= 0 uses the config. */
WG_API wg_status wg_classify(const wg_config *cfg, const wg_trace *trace, const char *agg,
                             const char *gate, double rate_hz, wg_events **out);
WG_API size_t wg_events_count(const wg_events *events);
WG_API wg_status wg_events_get(const wg_events *events, size_t i, wg_event_info *out);
WG_API wg_status wg_events_to_json(const wg_events *events, char **json);
WG_API void wg_events_free(wg_events *events);

/* Evaluates n trace/label pairs with the ungated pipeline. Either output may be NULL. */
WG_API wg_status wg_eval(const wg_config *cfg, const wg_trace *const *traces,
                         const wg_labels *const *labels, size_t n, const char *agg,
                         double rate_hz, char **report_json, char **report_csv);
/* Synthesizes and evaluates a single-gesture corpus in memory. */
WG_API wg_status wg_eval_corpus(const wg_config *cfg, int n_per_gesture, uint64_t seed,
                                const char *agg, char **report_json, char **report_csv);
/* False-positive rates of a gesture-free trace under each gate mode. */
WG_API wg_status wg_fpeval(const wg_config *cfg, const wg_trace *trace, const char *agg,
                           double rate_hz, char **rates_json, char **timeline_csv);
WG_API wg_status wg_rate_sweep(const wg_config *cfg, const double *rates_pps, size_t n_rates,
                               int n_per_gesture, uint64_t seed, int n_seeds, const char *agg,
                               char **csv);

#ifdef __cplusplus
}
#endif

#endif
