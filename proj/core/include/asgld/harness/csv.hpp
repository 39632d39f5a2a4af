#pragma once

#include <iosfwd>
#include <string>

#include "asgld/run.hpp"

namespace asgld::harness {

/// Trace CSV schema (bit-exact contract):
///   header  k,f,grad_norm,min_grad_sq,batch,err_metric
///   floats  printed with "%.17g" (17 significant digits, round-trip exact)
///   an absent err_metric is written as an empty field.
void write_trace_csv(std::ostream& out, const RunTrace& trace);

/// Companion file holding the preconditioner diagonal used at each recorded
/// step: header k,d0,...,d{d-1}, same float format.
void write_precond_csv(std::ostream& out, const RunTrace& trace);

/// Reads records back from the trace schema. Only the per-step records are
/// stored in CSV form; config and seeds live in the manifest.
RunTrace read_trace_csv(std::istream& in);

/// Fills trace.precond_diags from a companion file.
void read_precond_csv(std::istream& in, RunTrace& trace);

/// "%.17g".
std::string format_csv_double(double v);

}  // namespace asgld::harness
