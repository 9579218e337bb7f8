#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "moelab/bigint.hpp"
#include "moelab/budget.hpp"
#include "moelab/group_spec.hpp"
#include "moelab/interval.hpp"

namespace moelab {

/// kappa(N) = sqrt(N (N^{1/N} - 1)) - 1, evaluated as an enclosure.
/// N^{1/N} - 1 is computed as expm1(ln N / N); for N ~ 10^84 the naive
/// exp/ln route returns garbage long before overflow becomes an issue.
IntervalReal kappa(const BigInt& n,
                   mpfr_prec_t precision = IntervalReal::kDefaultPrecision);

/// Certified lower bound on the additivity-violation gap:
///   ln N / N - ln(1 + q^2 m / N)
/// where m is the pair-multiplicity statistic of the generating set. The
/// returned interval encloses the exact value; positivity of .lo is the
/// machine-checked conclusion. Units are nats (positivity is base-free).
IntervalReal gap_lower_bound(const BigInt& n, const IntervalReal& q,
                             std::uint64_t pair_multiplicity,
                             mpfr_prec_t precision = IntervalReal::kDefaultPrecision);

/// Interval twin of ball2_norm_constant: same registry, but every branch is
/// evaluated from exact integer inputs in outward-rounded arithmetic, so the
/// result can participate in a certificate.
IntervalReal ball2_norm_constant_interval(
    const GroupSpec& group, mpfr_prec_t precision = IntervalReal::kDefaultPrecision,
    const Budget& budget = {});

enum class CheckStatus { Pass, Fail, Degenerate };
std::string to_string(CheckStatus status);

/// One named verification step with machine-readable evidence
/// (intervals as [lo, hi] pairs, integers, witness strings).
struct CertificateCheck {
  std::string name;
  CheckStatus status = CheckStatus::Degenerate;
  nlohmann::json evidence;
};

/// Outcome of a certification run. verdict() is ACCEPT exactly when every
/// check passed and the certified gap is strictly positive; an undecidable
/// comparison (still overlapping at the precision cap) leaves a DEGENERATE
/// check and therefore a REJECT.
struct Certificate {
  nlohmann::json instance;
  std::vector<CertificateCheck> checks;
  std::optional<IntervalReal> kappa_value;
  std::optional<IntervalReal> q_value;
  std::uint64_t pair_multiplicity = 0;
  std::optional<IntervalReal> gap;
  mpfr_prec_t precision_bits = IntervalReal::kDefaultPrecision;

  bool accepted() const;
  std::string verdict() const;  // "ACCEPT" or "REJECT"
  nlohmann::json to_json() const;
};

/// Decides the hypothesis q * sqrt(m) <= kappa(|S|) for the group's
/// generating set and, on success, certifies the positive gap. q defaults to
/// the registered ball-2 constant of the group; pass an enclosure to certify
/// against a sharper (or externally obtained) bound. Comparisons are decided
/// only by strict interval separation; overlaps trigger precision doubling
/// (up to max_precision) and finally a DEGENERATE check.
Certificate certify_main_theorem(
    const GroupSpecPtr& group,
    std::optional<IntervalReal> q = std::nullopt,
    mpfr_prec_t precision = IntervalReal::kDefaultPrecision,
    mpfr_prec_t max_precision = 8192,
    const Budget& budget = {});

/// Free-product pipeline: factors of rank <= M, each either torsion-free on
/// its 2-ball or of girth >= 5, in total count N with e^{64(M^2+M+1)} <= N.
/// Checks the full constant chain
///   5 sqrt(2) x + 1 <= 8 x <= sqrt(ln N) <= sqrt(N (N^{1/N} - 1)),
/// x = sqrt(M^2+M+1), plus the direct hypothesis at the assembled generating
/// set, and emits the certified gap. Copy counts are symbolic big integers;
/// nothing enumerates the product group.
Certificate certify_free_product(
    std::uint64_t m_cap, const std::vector<GroupSpec::Factor>& factors,
    mpfr_prec_t precision = IntervalReal::kDefaultPrecision,
    mpfr_prec_t max_precision = 8192,
    const Budget& budget = {});

}  // namespace moelab
