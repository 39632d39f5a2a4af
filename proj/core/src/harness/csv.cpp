#include "asgld/harness/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "asgld/errors.hpp"

namespace asgld::harness {

std::string format_csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << "k,f,grad_norm,min_grad_sq,batch,err_metric\n";
  for (const auto& r : trace.records) {
    out << r.k << ',' << format_csv_double(r.f) << ',' << format_csv_double(r.grad_norm) << ','
        << format_csv_double(r.min_grad_sq) << ',' << r.batch << ',';
    if (r.err_metric) out << format_csv_double(*r.err_metric);
    out << '\n';
  }
}

void write_precond_csv(std::ostream& out, const RunTrace& trace) {
  if (trace.precond_diags.size() != trace.records.size()) {
    throw ContractError("write_precond_csv: trace has no recorded preconditioner diagonals");
  }
  const std::size_t d = trace.precond_diags.empty() ? 0 : trace.precond_diags.front().size();
  out << "k";
  for (std::size_t i = 0; i < d; ++i) out << ",d" << i;
  out << '\n';
  for (std::size_t r = 0; r < trace.records.size(); ++r) {
    out << trace.records[r].k;
    for (const double v : trace.precond_diags[r]) out << ',' << format_csv_double(v);
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double to_double(const std::string& s, const char* what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size()) {
    throw ParseError(std::string("trace csv: bad ") + what + " field '" + s + "'");
  }
  return v;
}

}  // namespace

RunTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split_csv(line) != std::vector<std::string>{"k", "f", "grad_norm", "min_grad_sq",
                                                                             "batch", "err_metric"}) {
    throw ParseError("trace csv: bad header");
  }
  RunTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 6) throw ParseError("trace csv: expected 6 fields, got " + std::to_string(f.size()));
    TraceRecord rec;
    rec.k = static_cast<long>(to_double(f[0], "k"));
    rec.f = to_double(f[1], "f");
    rec.grad_norm = to_double(f[2], "grad_norm");
    rec.min_grad_sq = to_double(f[3], "min_grad_sq");
    rec.batch = static_cast<long>(to_double(f[4], "batch"));
    if (!f[5].empty()) rec.err_metric = to_double(f[5], "err_metric");
    trace.records.push_back(rec);
  }
  if (trace.records.empty()) throw ParseError("trace csv: no records");
  trace.budget = trace.records.back().k;
  return trace;
}

void read_precond_csv(std::istream& in, RunTrace& trace) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("precond csv: missing header");
  trace.precond_diags.clear();
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() < 2) throw ParseError("precond csv: too few fields");
    if (row >= trace.records.size() || static_cast<long>(to_double(f[0], "k")) != trace.records[row].k) {
      throw ParseError("precond csv: rows do not align with the trace records");
    }
    Vec diag;
    diag.reserve(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) diag.push_back(to_double(f[i], "diag"));
    trace.precond_diags.push_back(std::move(diag));
    ++row;
  }
  if (trace.precond_diags.size() != trace.records.size()) {
    throw ParseError("precond csv: row count does not match the trace");
  }
}

}  // namespace asgld::harness
