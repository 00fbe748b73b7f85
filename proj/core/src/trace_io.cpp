#include "girthlab/trace_io.hpp"

#include <cstdio>

namespace girthlab {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void append_record(std::string& out, const RoundState& s) {
  out += "{\"k\":";
  out += std::to_string(s.k);
  out += ",\"w\":";
  out += format_double(s.white);
  out += ",\"b\":";
  out += format_double(s.blue);
  out += ",\"r\":";
  out += format_double(s.red);
  out += ",\"wdeg\":[";
  for (int i = 0; i < 4; ++i) {
    if (i) out += ',';
    out += format_double(s.wdeg[i]);
  }
  out += "],\"qdeg\":[";
  for (int i = 0; i < 3; ++i) {
    if (i) out += ',';
    out += format_double(s.qdeg[i]);
  }
  out += "]}";
}

}  // namespace

std::string trace_to_json(const Trace& trace) {
  std::string out;
  out.reserve(trace.rounds.size() * 220 + 2);
  out += '[';
  bool first = true;
  for (const RoundState& s : trace.rounds) {
    if (!first) out += ',';
    first = false;
    append_record(out, s);
  }
  out += ']';
  return out;
}

std::string trace_to_csv(const Trace& trace) {
  std::string out;
  out.reserve(trace.rounds.size() * 200 + 64);
  out += "k,w,b,r,wdeg0,wdeg1,wdeg2,wdeg3,qdeg1,qdeg2,qdeg3\n";
  for (const RoundState& s : trace.rounds) {
    out += std::to_string(s.k);
    out += ',';
    out += format_double(s.white);
    out += ',';
    out += format_double(s.blue);
    out += ',';
    out += format_double(s.red);
    for (int i = 0; i < 4; ++i) {
      out += ',';
      out += format_double(s.wdeg[i]);
    }
    for (int i = 0; i < 3; ++i) {
      out += ',';
      out += format_double(s.qdeg[i]);
    }
    out += '\n';
  }
  return out;
}

const char* stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::white_below_threshold:
      return "white_below_threshold";
    case StopReason::max_rounds:
      return "max_rounds";
  }
  return "unknown";
}

}  // namespace girthlab
