#pragma once

// Verification reports. Every checker returns a Report listing the axioms it
// tested in a fixed order; a failing axiom carries the first witness found:
// the basis-index tuple and the two unequal vectors.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bgd/linalg.hpp"

namespace bgd {

struct Witness {
  std::vector<Index> indices;
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;
  std::string note;
};

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::size_t instances = 0;
  std::optional<Witness> witness;
};

class Report {
 public:
  Report() = default;
  explicit Report(std::string subject) : subject_(std::move(subject)) {}

  const std::string& subject() const { return subject_; }
  const std::vector<AxiomCheck>& checks() const { return checks_; }
  bool passed() const;
  /// First failing check, or nullptr.
  const AxiomCheck* first_failure() const;
  const AxiomCheck* find(const std::string& name) const;

  void add(AxiomCheck check) { checks_.push_back(std::move(check)); }
  void add_pass(std::string name, std::size_t instances) { checks_.push_back({std::move(name), true, instances, {}}); }
  void add_failure(std::string name, std::size_t instances, Witness w) {
    checks_.push_back({std::move(name), false, instances, std::move(w)});
  }
  /// Appends the checks of `other`, prefixing their names.
  void merge(const Report& other, const std::string& prefix);

 private:
  std::string subject_;
  std::vector<AxiomCheck> checks_;
};

/// Malformed or inconsistent input (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction refused to return because an axiom failed (CLI exit code 1).
class VerificationError : public std::runtime_error {
 public:
  VerificationError(const std::string& what, Report report)
      : std::runtime_error(what), report_(std::move(report)) {}
  const Report& report() const { return report_; }

 private:
  Report report_;
};

/// Throws VerificationError naming the first failed axiom.
void require(const Report& report, const std::string& context);

/// Column-by-column comparison of two maps. `decode` turns a column index
/// into the basis tuple reported as witness.
template <class S>
AxiomCheck compare_columns(std::string name, const Matrix<S>& lhs, const Matrix<S>& rhs,
                           const std::function<std::vector<Index>(Index)>& decode = {}) {
  AxiomCheck check{std::move(name), true, static_cast<std::size_t>(lhs.cols()), {}};
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    check.passed = false;
    check.witness = Witness{{}, {}, {}, "shape mismatch"};
    return check;
  }
  for (Index j = 0; j < lhs.cols(); ++j) {
    if (exactly_equal(lhs.col(j), rhs.col(j))) continue;
    check.passed = false;
    check.witness = Witness{decode ? decode(j) : std::vector<Index>{j}, to_strings(lhs.col(j)),
                            to_strings(rhs.col(j)), {}};
    break;
  }
  return check;
}

/// Accumulates one axiom over many comparisons, keeping the first witness.
class CheckBuilder {
 public:
  explicit CheckBuilder(std::string name) : check_{std::move(name), true, 0, {}} {}

  bool failed() const { return !check_.passed; }

  /// Compares column j of lhs and rhs for every j; `indices(j)` names the instance.
  template <class DA, class DB, class F>
  void compare(const Eigen::MatrixBase<DA>& lhs, const Eigen::MatrixBase<DB>& rhs, F&& indices,
               const std::string& note = {}) {
    check_.instances += static_cast<std::size_t>(lhs.cols());
    if (failed()) return;
    if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
      fail(Witness{{}, {}, {}, note.empty() ? "shape mismatch" : note + ": shape mismatch"});
      return;
    }
    for (Index j = 0; j < lhs.cols(); ++j) {
      if (exactly_equal(lhs.col(j), rhs.col(j))) continue;
      fail(Witness{indices(j), to_strings(lhs.col(j)), to_strings(rhs.col(j)), note});
      return;
    }
  }

  void count(std::size_t n = 1) { check_.instances += n; }
  void fail(Witness w) {
    if (failed()) return;
    check_.passed = false;
    check_.witness = std::move(w);
  }
  AxiomCheck done() && { return std::move(check_); }

 private:
  AxiomCheck check_;
};

/// Decoder for a column index into a flattened tensor of spaces with the
/// given dimensions.
std::function<std::vector<Index>(Index)> tuple_decoder(std::vector<Index> dims);

}  // namespace bgd
