#pragma once

#include <string>
#include <vector>

#include "relpow/instance.hpp"

namespace relpow {

struct SampleRecord {
  std::string digest; // deterministic rendering of the sampled inputs
  double residual = 0.0;
  bool ok = false;
  std::string note;
};

struct ResidualReport {
  std::string identity_id;
  std::vector<SampleRecord> samples;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  long runtime_ms = 0;
};

// Serialization round-trips. runtime_ms is written only on request so
// that reports are reproducible byte-for-byte for a fixed seed.
std::string report_to_json(const ResidualReport& report,
                           bool include_runtime = false);
std::string reports_to_json(const std::vector<ResidualReport>& reports,
                            bool include_runtime = false);
ResidualReport report_from_json(const std::string& text);

const std::vector<std::string>& identity_catalog();

struct VerifyOptions {
  int samples = 6;
  unsigned seed = 20240915;
  // Mixed-instance negative control: one side of every identity is
  // evaluated on the instance perturbed by this amount, so a nonzero
  // value must push residuals above tolerance.
  double perturbation = 0.0;
  double gamma = 0.3; // kernel exponent used by the semigroup identities
};

// Runs the named identity as a residual suite over the instance.
// Throws UnknownIdentity for names outside the catalog; numeric failures
// inside a sample are recorded on the sample, never thrown.
ResidualReport verify_identity(const std::string& id, const ProblemSpec& spec,
                               double tol, const VerifyOptions& opts = {});

// All catalog identities in catalog order.
std::vector<ResidualReport> verify_all(const ProblemSpec& spec, double tol,
                                       const VerifyOptions& opts = {});

} // namespace relpow
