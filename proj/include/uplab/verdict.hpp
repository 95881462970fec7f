// Outcome of checking one inequality  lhs >= rhs.
#ifndef UPLAB_VERDICT_HPP
#define UPLAB_VERDICT_HPP

#include <algorithm>
#include <cmath>
#include <string>

namespace uplab {

enum class Status { pass, fail, skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "fail";
}

struct Verdict {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  Status status = Status::skipped;
  std::string notes;
};

/// Pass iff lhs - rhs >= -(rel_tol * max(|lhs|, |rhs|) + abs_tol).
inline Verdict make_verdict(std::string id, double lhs, double rhs, double rel_tol = 1e-6,
                            double abs_tol = 0.0, std::string notes = {}) {
  Verdict v;
  v.id = std::move(id);
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = lhs - rhs;
  v.tolerance = rel_tol * std::max(std::abs(lhs), std::abs(rhs)) + abs_tol;
  const bool ok = std::isfinite(v.margin) ? v.margin >= -v.tolerance : (lhs == INFINITY && rhs != INFINITY);
  v.status = ok ? Status::pass : Status::fail;
  v.notes = std::move(notes);
  return v;
}

inline Verdict skipped_verdict(std::string id, std::string reason) {
  Verdict v;
  v.id = std::move(id);
  v.status = Status::skipped;
  v.notes = std::move(reason);
  return v;
}

inline Verdict failed_verdict(std::string id, std::string reason) {
  Verdict v;
  v.id = std::move(id);
  v.status = Status::fail;
  v.lhs = v.rhs = v.margin = NAN;
  v.notes = std::move(reason);
  return v;
}

}  // namespace uplab

#endif
