#include "dop/moments.hpp"

#include "dop/errors.hpp"

namespace dop {

namespace {

/// Stop-rule bookkeeping for one series in a shared sweep.
class TailState {
public:
  TailState(Prec work_prec, Prec base_prec, long extra_bits, int consecutive)
      : sum_(work_prec),
        last_abs_(work_prec),
        thresh_scale_(BigReal::two_pow(-(base_prec + extra_bits), work_prec)),
        needed_(consecutive) {}

  void accumulate(const BigReal& term) {
    sum_ += term;
    BigReal a = abs(term);
    const bool small = a < thresh_scale_ * abs(sum_);
    const bool descending = last_abs_.is_zero() ? false : a < last_abs_;
    if (small && descending) {
      ++streak_;
    } else {
      streak_ = 0;
    }
    last_abs_ = a;
  }

  bool done() const { return streak_ >= needed_; }
  const BigReal& sum() const { return sum_; }

private:
  BigReal sum_;
  BigReal last_abs_;
  BigReal thresh_scale_;  // 2^{-(prec+extra)} relative to the partial sum
  int needed_;
  int streak_ = 0;
};

} // namespace

BigReal moment(const PearsonWeight& w, unsigned long n, Prec prec, const TailRule& rule) {
  const Prec work = prec + rule.guard_bits;
  TailState state(work, prec, rule.extra_bits, rule.consecutive);
  WeightSweep sweep(w, work);
  for (unsigned long k = 0;; ++k) {
    BigReal kk(static_cast<long>(k), work);
    state.accumulate(pow_ui(kk, n) * sweep.value());
    if (state.done()) break;
    if (k >= rule.k_max) {
      throw SlowConvergence("moment series did not satisfy the tail rule within k_max = " +
                            std::to_string(rule.k_max));
    }
    sweep.advance();
  }
  return state.sum().rounded_to(prec);
}

HankelTruncation moment_matrix(const PearsonWeight& w, std::size_t K, Prec prec,
                               const TailRule& rule) {
  if (K < 1) throw DomainError("K must be >= 1");
  const std::size_t count = 2 * K - 1;
  const Prec work = prec + rule.guard_bits;

  std::vector<TailState> states;
  states.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    states.emplace_back(work, prec, rule.extra_bits, rule.consecutive);
  }

  WeightSweep sweep(w, work);
  for (unsigned long k = 0;; ++k) {
    const BigReal& wk = sweep.value();
    // powers k^0..k^{count-1} by running product; 0^0 = 1.
    BigReal pw(1L, work);
    BigReal kk(static_cast<long>(k), work);
    bool all_done = true;
    for (std::size_t n = 0; n < count; ++n) {
      if (n > 0) pw *= kk;
      states[n].accumulate(pw * wk);
      all_done = all_done && states[n].done();
    }
    if (all_done) break;
    if (k >= rule.k_max) {
      throw SlowConvergence("moment series did not satisfy the tail rule within k_max = " +
                            std::to_string(rule.k_max));
    }
    sweep.advance();
  }

  HankelTruncation out;
  out.K = K;
  out.rho.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    out.rho.push_back(states[n].sum().rounded_to(prec));
  }
  return out;
}

Mat HankelTruncation::to_mat() const {
  Mat m(K, K, prec());
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j) m(i, j) = g(i, j);
  return m;
}

std::vector<BigReal> hankel_dets(const HankelTruncation& g) {
  Mat gm = g.to_mat();
  const Prec p = g.prec();
  LdltResult f = ldlt(gm, p);
  std::vector<BigReal> dets;
  dets.reserve(g.K);
  BigReal acc(1L, p);
  for (std::size_t k = 0; k < g.K; ++k) {
    acc *= f.d[k];
    dets.push_back(acc);
  }
  return dets;
}

} // namespace dop
