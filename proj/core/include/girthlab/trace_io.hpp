#pragma once

#include <string>

#include "girthlab/recurrence.hpp"

namespace girthlab {

// Doubles are rendered with 17 significant digits, enough to round-trip any
// binary64 value exactly; identical inputs therefore serialize to identical
// bytes.
std::string format_double(double x);

// JSON array with one record {"k", "w", "b", "r", "wdeg", "qdeg"} per round.
std::string trace_to_json(const Trace& trace);

// CSV with header k,w,b,r,wdeg0..wdeg3,qdeg1..qdeg3 and one row per round.
std::string trace_to_csv(const Trace& trace);

const char* stop_reason_name(StopReason reason);

}  // namespace girthlab
