#include "moelab/certify.hpp"

#include <algorithm>
#include <utility>

#include "moelab/combinatorics.hpp"
#include "moelab/errors.hpp"
#include "moelab/groups.hpp"

namespace moelab {

namespace {

using nlohmann::json;

json interval_json(const IntervalReal& v) {
  return json::array({v.lo_double(), v.hi_double()});
}

/// Three-valued interval comparison a <= b: decided only by endpoint
/// separation, otherwise Unknown (candidate for precision escalation).
enum class Tri { True, False, Unknown };

Tri interval_leq(const IntervalReal& a, const IntervalReal& b) {
  if (a.certainly_leq(b)) return Tri::True;
  if (a.strictly_greater(b)) return Tri::False;
  return Tri::Unknown;
}

CheckStatus status_of(Tri t) {
  switch (t) {
    case Tri::True: return CheckStatus::Pass;
    case Tri::False: return CheckStatus::Fail;
    default: return CheckStatus::Degenerate;
  }
}

struct Attempt {
  Certificate cert;
  bool wants_precision = false;  // some comparison was undecided at this precision
};

bool has_fail(const Certificate& cert) {
  return std::any_of(cert.checks.begin(), cert.checks.end(), [](const CertificateCheck& c) {
    return c.status == CheckStatus::Fail;
  });
}

/// Positive x with x.lo > 0 passes; x.hi <= 0 fails; otherwise undecided.
Tri interval_positive(const IntervalReal& x, mpfr_prec_t precision) {
  const IntervalReal zero = IntervalReal::exact(0L, precision);
  if (x.is_positive()) return Tri::True;
  if (x.certainly_leq(zero)) return Tri::False;
  return Tri::Unknown;
}

Attempt attempt_main(const GroupSpecPtr& group, const std::optional<IntervalReal>& q_in,
                     mpfr_prec_t precision, const Budget& budget) {
  Attempt attempt;
  Certificate& cert = attempt.cert;
  cert.precision_bits = precision;

  const BigInt set_size = group->generator_count();
  cert.instance = {{"kind", "main_theorem"},
                   {"group", group->to_string()},
                   {"generating_set_size", to_string(set_size)}};

  // Pair-multiplicity statistic of the generating set (exact integers,
  // independent of working precision).
  std::optional<PairMultiplicityReport> mult;
  try {
    mult = pair_multiplicity(*group, budget);
    json evidence{{"value", mult->value}, {"degenerate", mult->degenerate}};
    if (mult->witness) evidence["witness"] = mult->witness->to_string(*group);
    cert.pair_multiplicity = mult->value;
    cert.checks.push_back({"pair_multiplicity", CheckStatus::Pass, std::move(evidence)});
  } catch (const Error& e) {
    cert.checks.push_back({"pair_multiplicity", CheckStatus::Degenerate, {{"error", e.what()}}});
  }

  // Certified norm constant for the 2-ball, either caller-provided or from
  // the registry of exact formulas.
  std::optional<IntervalReal> q;
  try {
    if (q_in) {
      q = *q_in;
      cert.checks.push_back(
          {"norm_constant", CheckStatus::Pass, {{"q", interval_json(*q)}, {"source", "provided"}}});
    } else {
      q = ball2_norm_constant_interval(*group, precision, budget);
      cert.checks.push_back({"norm_constant",
                             CheckStatus::Pass,
                             {{"q", interval_json(*q)}, {"source", "registered_ball2"}}});
    }
    cert.q_value = *q;
  } catch (const Error& e) {
    cert.checks.push_back({"norm_constant", CheckStatus::Degenerate, {{"error", e.what()}}});
  }

  if (!mult || !q) {
    cert.checks.push_back(
        {"hypothesis", CheckStatus::Degenerate, {{"blocked_by", "upstream degenerate check"}}});
    return attempt;
  }

  // Hypothesis q * sqrt(mult) <= kappa(|S|), decided on interval endpoints.
  const IntervalReal kappa_s = kappa(set_size, precision);
  cert.kappa_value = kappa_s;
  const IntervalReal lhs =
      *q * IntervalReal::exact(BigInt(mult->value), precision).sqrt();
  const Tri hyp = interval_leq(lhs, kappa_s);
  attempt.wants_precision |= (hyp == Tri::Unknown);
  cert.checks.push_back({"hypothesis",
                         status_of(hyp),
                         {{"q_sqrt_mult", interval_json(lhs)}, {"kappa", interval_json(kappa_s)}}});
  if (hyp != Tri::True) return attempt;

  // Certified violation gap, strictly positive for acceptance.
  const IntervalReal gap = gap_lower_bound(set_size, *q, mult->value, precision);
  cert.gap = gap;
  const Tri positive = interval_positive(gap, precision);
  attempt.wants_precision |= (positive == Tri::Unknown);
  cert.checks.push_back({"gap_positive",
                         status_of(positive),
                         {{"gap", interval_json(gap)}, {"units", "nats"}}});
  return attempt;
}

Attempt attempt_free_product(std::uint64_t m_cap, const std::vector<GroupSpec::Factor>& factors,
                             const std::vector<const GroupSpec*>& distinct,
                             mpfr_prec_t precision, const Budget& budget) {
  Attempt attempt;
  Certificate& cert = attempt.cert;
  cert.precision_bits = precision;

  const BigInt m(static_cast<unsigned long>(m_cap));
  const BigInt x_squared = m * m + m + 1;

  BigInt factor_count = 0;
  BigInt set_size = 0;
  json instance_factors = json::array();
  for (const auto& fac : factors) {
    factor_count += fac.multiplicity;
    set_size += fac.multiplicity * fac.spec->generator_count();
    instance_factors.push_back(
        {{"group", fac.spec->to_string()}, {"copies", to_string(fac.multiplicity)}});
  }
  cert.instance = {{"kind", "free_product"},
                   {"M", m_cap},
                   {"factors", instance_factors},
                   {"factor_count", to_string(factor_count)},
                   {"generating_set_size", to_string(set_size)}};

  // (1) Every distinct factor has rank at most M, witnessed by a minimal
  // generating set.
  {
    CheckStatus status = CheckStatus::Pass;
    json evidence = json::array();
    for (const GroupSpec* f : distinct) {
      json entry{{"group", f->to_string()}};
      const BigInt rank = f->generator_count();
      entry["rank"] = to_string(rank);
      const bool rank_ok = rank <= m;
      entry["rank_within_cap"] = rank_ok;
      bool minimal = false;
      try {
        minimal = is_minimal_generating_set(*f, budget);
        entry["minimal_generating_set"] = minimal;
      } catch (const Error& e) {
        entry["error"] = e.what();
        status = CheckStatus::Degenerate;
      }
      if (!(rank_ok && minimal) && status != CheckStatus::Degenerate)
        status = CheckStatus::Fail;
      evidence.push_back(std::move(entry));
    }
    cert.checks.push_back({"factor_rank", status, std::move(evidence)});
  }

  // (2) Each distinct factor is involution-free on its 2-ball or has girth
  // at least 5 (either condition rules the short relations out).
  {
    CheckStatus status = CheckStatus::Pass;
    json evidence = json::array();
    for (const GroupSpec* f : distinct) {
      json entry{{"group", f->to_string()}};
      try {
        const bool involution = ball2_has_involution(*f, budget);
        entry["involution_in_ball2"] = involution;
        bool ok = !involution;
        if (involution) {
          const GirthResult g = girth(*f, 16, budget);
          if (g.exceeded) {
            entry["girth"] = "exceeds_cutoff";
            ok = true;
          } else {
            entry["girth"] = g.value;
            ok = !g.degenerate && g.value >= 5;
          }
        }
        if (!ok && status != CheckStatus::Degenerate) status = CheckStatus::Fail;
      } catch (const Error& e) {
        entry["error"] = e.what();
        status = CheckStatus::Degenerate;
      }
      evidence.push_back(std::move(entry));
    }
    cert.checks.push_back({"factor_girth", status, std::move(evidence)});
  }

  // (3) 64 (M^2+M+1) <= ln N, with ln of the big integer taken in interval
  // arithmetic (N itself is never materialized in fixed precision).
  const IntervalReal ln_count = IntervalReal::exact(factor_count, precision).ln();
  {
    const BigInt threshold = 64 * x_squared;
    const Tri t = interval_leq(IntervalReal::exact(threshold, precision), ln_count);
    attempt.wants_precision |= (t == Tri::Unknown);
    cert.checks.push_back({"size_threshold",
                           status_of(t),
                           {{"threshold", to_string(threshold)},
                            {"ln_factor_count", interval_json(ln_count)}}});
  }

  // (4) Pair multiplicity through the free-product route (symbolic in the
  // copy counts).
  std::optional<PairMultiplicityReport> mult;
  try {
    mult = pair_multiplicity_free_product(factors, budget);
    json evidence{{"value", mult->value}, {"degenerate", mult->degenerate}};
    cert.pair_multiplicity = mult->value;
    cert.checks.push_back({"pair_multiplicity", CheckStatus::Pass, std::move(evidence)});
  } catch (const Error& e) {
    cert.checks.push_back({"pair_multiplicity", CheckStatus::Degenerate, {{"error", e.what()}}});
  }

  // (5) q = 5 sqrt(2) max_i sqrt(|B_2|) from exact ball sizes, each of which
  // must respect the triangle-inequality cap M^2+M+1.
  std::optional<IntervalReal> q;
  {
    CheckStatus status = CheckStatus::Pass;
    json evidence = json::array();
    BigInt max_ball = 0;
    try {
      for (const GroupSpec* f : distinct) {
        const BigInt b2(static_cast<unsigned long>(ball(*f, 2, budget).size()));
        const bool within = b2 <= x_squared;
        evidence.push_back({{"group", f->to_string()},
                            {"ball2_size", to_string(b2)},
                            {"within_cap", within}});
        if (!within) status = CheckStatus::Fail;
        max_ball = std::max(max_ball, b2);
      }
      q = IntervalReal::exact(50 * max_ball, precision).sqrt();
      cert.q_value = *q;
      cert.checks.push_back({"norm_constant",
                             status,
                             {{"factors", std::move(evidence)}, {"q", interval_json(*q)}}});
    } catch (const Error& e) {
      cert.checks.push_back({"norm_constant", CheckStatus::Degenerate, {{"error", e.what()}}});
      q.reset();
    }
  }

  // (6) The constant chain 5 sqrt(2) x + 1 <= 8 x <= sqrt(ln N) <=
  // sqrt(N (N^{1/N} - 1)), x = sqrt(M^2+M+1). The last link is the tight
  // one and routinely needs doubled precision.
  {
    const IntervalReal x = IntervalReal::exact(x_squared, precision).sqrt();
    const IntervalReal lhs_a =
        IntervalReal::exact(50L, precision).sqrt() * x + IntervalReal::exact(1L, precision);
    const IntervalReal eight_x = IntervalReal::exact(8L, precision) * x;
    const IntervalReal sqrt_ln = ln_count.sqrt();
    const IntervalReal count = IntervalReal::exact(factor_count, precision);
    const IntervalReal kappa_side = (count * (ln_count / count).expm1()).sqrt();

    const Tri a = interval_leq(lhs_a, eight_x);
    const Tri b = interval_leq(eight_x, sqrt_ln);
    const Tri c = interval_leq(sqrt_ln, kappa_side);
    Tri all = Tri::True;
    for (const Tri t : {a, b, c}) {
      if (t == Tri::False) all = Tri::False;
      if (t == Tri::Unknown && all != Tri::False) all = Tri::Unknown;
    }
    attempt.wants_precision |= (all == Tri::Unknown);
    cert.checks.push_back({"constant_chain",
                           status_of(all),
                           {{"five_sqrt2_x_plus_1", interval_json(lhs_a)},
                            {"eight_x", interval_json(eight_x)},
                            {"sqrt_ln_factor_count", interval_json(sqrt_ln)},
                            {"kappa_plus_one", interval_json(kappa_side)}}});
  }

  if (!mult || !q) {
    cert.checks.push_back(
        {"hypothesis", CheckStatus::Degenerate, {{"blocked_by", "upstream degenerate check"}}});
    return attempt;
  }

  // (7) Direct hypothesis at the assembled generating set: q sqrt(mult) <=
  // kappa(|S|). Evaluated outright instead of through monotonicity of kappa.
  const IntervalReal kappa_s = kappa(set_size, precision);
  cert.kappa_value = kappa_s;
  const IntervalReal lhs =
      *q * IntervalReal::exact(BigInt(mult->value), precision).sqrt();
  const Tri hyp = interval_leq(lhs, kappa_s);
  attempt.wants_precision |= (hyp == Tri::Unknown);
  cert.checks.push_back({"hypothesis",
                         status_of(hyp),
                         {{"q_sqrt_mult", interval_json(lhs)}, {"kappa", interval_json(kappa_s)}}});
  if (hyp != Tri::True) return attempt;

  // (8) Certified violation gap at the assembled set.
  const IntervalReal gap = gap_lower_bound(set_size, *q, mult->value, precision);
  cert.gap = gap;
  const Tri positive = interval_positive(gap, precision);
  attempt.wants_precision |= (positive == Tri::Unknown);
  cert.checks.push_back({"gap_positive",
                         status_of(positive),
                         {{"gap", interval_json(gap)}, {"units", "nats"}}});
  return attempt;
}

}  // namespace

IntervalReal kappa(const BigInt& n, mpfr_prec_t precision) {
  if (n < 1) throw DomainError("kappa needs N >= 1");
  const IntervalReal big_n = IntervalReal::exact(n, precision);
  const IntervalReal root_minus_one = (big_n.ln() / big_n).expm1();  // N^{1/N} - 1
  return (big_n * root_minus_one).sqrt() - IntervalReal::exact(1L, precision);
}

IntervalReal gap_lower_bound(const BigInt& n, const IntervalReal& q,
                             std::uint64_t pair_multiplicity, mpfr_prec_t precision) {
  if (n < 1) throw DomainError("gap_lower_bound needs N >= 1");
  if (pair_multiplicity < 1)
    throw ValidationError("gap_lower_bound: pair multiplicity must be >= 1");
  const IntervalReal big_n = IntervalReal::exact(n, precision);
  const IntervalReal mult =
      IntervalReal::exact(BigInt(static_cast<unsigned long>(pair_multiplicity)), precision);
  return big_n.ln() / big_n - (q * q * mult / big_n).log1p();
}

IntervalReal ball2_norm_constant_interval(const GroupSpec& group, mpfr_prec_t precision,
                                          const Budget& budget) {
  if (group.is_finite()) {
    const BigInt b2(static_cast<unsigned long>(ball(group, 2, budget).size()));
    return IntervalReal::exact(b2, precision).sqrt();
  }
  if (group.is<GroupSpec::Free>()) {
    const BigInt r(static_cast<unsigned long>(group.as<GroupSpec::Free>().rank));
    BigInt b2 = 1 + r + r * r;
    if (b2 > 14) b2 = 14;  // length-layer bound beats |B_2| from rank 3 on
    return IntervalReal::exact(b2, precision).sqrt();
  }
  if (group.is<GroupSpec::FreeProduct>()) {
    std::optional<IntervalReal> factor_max;
    std::vector<const GroupSpec*> seen;
    for (const auto& fac : group.as<GroupSpec::FreeProduct>().factors) {
      const bool duplicate =
          std::any_of(seen.begin(), seen.end(),
                      [&](const GroupSpec* s) { return s->equals(*fac.spec); });
      if (duplicate) continue;
      seen.push_back(fac.spec.get());
      const IntervalReal c = ball2_norm_constant_interval(*fac.spec, precision, budget);
      factor_max = factor_max ? IntervalReal::max(*factor_max, c) : c;
    }
    if (!factor_max) throw ValidationError("free product needs at least one factor");
    return IntervalReal::exact(50L, precision).sqrt() * *factor_max;
  }
  const auto& power = group.as<GroupSpec::DirectPower>();
  const IntervalReal base = ball2_norm_constant_interval(*power.base, precision, budget);
  const IntervalReal base_sq = base * base;
  IntervalReal sum = IntervalReal::exact(1L, precision);
  if (power.exponent >= 1) {
    const BigInt choose_one(static_cast<unsigned long>(power.exponent));
    sum = sum + IntervalReal::exact(choose_one, precision) * base_sq;
  }
  if (power.exponent >= 2) {
    BigInt choose_two;
    mpz_bin_uiui(choose_two.get_mpz_t(), power.exponent, 2);
    sum = sum + IntervalReal::exact(choose_two, precision) * (base_sq * base_sq);
  }
  return sum.sqrt();
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    default: return "DEGENERATE";
  }
}

bool Certificate::accepted() const {
  const bool all_pass =
      std::all_of(checks.begin(), checks.end(), [](const CertificateCheck& c) {
        return c.status == CheckStatus::Pass;
      });
  return all_pass && gap.has_value() && gap->is_positive();
}

std::string Certificate::verdict() const { return accepted() ? "ACCEPT" : "REJECT"; }

nlohmann::json Certificate::to_json() const {
  json report;
  report["instance"] = instance;
  json check_array = json::array();
  for (const auto& check : checks)
    check_array.push_back({{"name", check.name},
                           {"status", to_string(check.status)},
                           {"evidence", check.evidence}});
  report["checks"] = std::move(check_array);
  report["kappa"] = kappa_value ? interval_json(*kappa_value) : json();
  report["q"] = q_value ? interval_json(*q_value) : json();
  report["pair_multiplicity"] = pair_multiplicity;
  report["gap"] = gap ? interval_json(*gap) : json();
  report["verdict"] = verdict();
  report["precision_bits"] = static_cast<std::int64_t>(precision_bits);
  return report;
}

Certificate certify_main_theorem(const GroupSpecPtr& group, std::optional<IntervalReal> q,
                                 mpfr_prec_t precision, mpfr_prec_t max_precision,
                                 const Budget& budget) {
  if (!group) throw ValidationError("certify_main_theorem: null group");
  if (precision < MPFR_PREC_MIN) throw ValidationError("precision below MPFR minimum");
  const mpfr_prec_t cap = std::max(precision, max_precision);
  mpfr_prec_t bits = precision;
  for (;;) {
    Attempt attempt = attempt_main(group, q, bits, budget);
    const bool escalate =
        attempt.wants_precision && !has_fail(attempt.cert) && bits * 2 <= cap;
    if (!escalate) return std::move(attempt.cert);
    bits *= 2;
  }
}

Certificate certify_free_product(std::uint64_t m_cap,
                                 const std::vector<GroupSpec::Factor>& factors,
                                 mpfr_prec_t precision, mpfr_prec_t max_precision,
                                 const Budget& budget) {
  if (m_cap < 1) throw ValidationError("certify_free_product: M must be >= 1");
  if (factors.empty()) throw ValidationError("certify_free_product: no factors");
  if (precision < MPFR_PREC_MIN) throw ValidationError("precision below MPFR minimum");
  for (const auto& fac : factors) {
    if (!fac.spec) throw ValidationError("certify_free_product: null factor spec");
    if (fac.multiplicity < 1)
      throw ValidationError("certify_free_product: multiplicity must be >= 1");
  }
  std::vector<const GroupSpec*> distinct;
  for (const auto& fac : factors) {
    const bool duplicate =
        std::any_of(distinct.begin(), distinct.end(),
                    [&](const GroupSpec* s) { return s->equals(*fac.spec); });
    if (!duplicate) distinct.push_back(fac.spec.get());
  }

  const mpfr_prec_t cap = std::max(precision, max_precision);
  mpfr_prec_t bits = precision;
  for (;;) {
    Attempt attempt = attempt_free_product(m_cap, factors, distinct, bits, budget);
    const bool escalate =
        attempt.wants_precision && !has_fail(attempt.cert) && bits * 2 <= cap;
    if (!escalate) return std::move(attempt.cert);
    bits *= 2;
  }
}

}  // namespace moelab
