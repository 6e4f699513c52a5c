#pragma once

// Clustering agreement and ranking metrics: purity / inverse purity / PIF,
// BCubed precision / recall / BCF, ARI, AMI, AUC-ROC and AUC-PRC.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "evtype/common.hpp"

namespace evtype {

// A labeling of n items. Labels are opaque ids; only equality matters.
struct Partition {
  std::vector<int> labels;

  std::size_t size() const { return labels.size(); }

  static Partition from_strings(const std::vector<std::string>& raw) {
    Partition p;
    p.labels.reserve(raw.size());
    std::map<std::string, int> ids;
    for (const auto& s : raw) {
      auto [it, inserted] = ids.emplace(s, static_cast<int>(ids.size()));
      p.labels.push_back(it->second);
    }
    return p;
  }
};

namespace detail {

// Contingency table between two labelings plus the margin counts.
struct Contingency {
  std::vector<std::vector<std::int64_t>> cells;  // rows: a-labels, cols: b-labels
  std::vector<std::int64_t> row_sums, col_sums;
  std::int64_t n = 0;
};

inline std::vector<int> compress(const std::vector<int>& labels) {
  std::map<int, int> ids;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) {
    auto [it, inserted] = ids.emplace(l, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  return out;
}

inline Contingency contingency(const Partition& a, const Partition& b) {
  if (a.size() != b.size())
    throw ShapeError("partition sizes differ: " + std::to_string(a.size()) +
                     " vs " + std::to_string(b.size()));
  const auto la = compress(a.labels);
  const auto lb = compress(b.labels);
  const int ra = la.empty() ? 0 : *std::max_element(la.begin(), la.end()) + 1;
  const int rb = lb.empty() ? 0 : *std::max_element(lb.begin(), lb.end()) + 1;
  Contingency c;
  c.cells.assign(ra, std::vector<std::int64_t>(rb, 0));
  c.row_sums.assign(ra, 0);
  c.col_sums.assign(rb, 0);
  c.n = static_cast<std::int64_t>(la.size());
  for (std::size_t i = 0; i < la.size(); ++i) {
    ++c.cells[la[i]][lb[i]];
    ++c.row_sums[la[i]];
    ++c.col_sums[lb[i]];
  }
  return c;
}

inline double choose2(std::int64_t m) {
  return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1);
}

}  // namespace detail

// Fraction of items sitting in the majority class of their cluster.
inline double purity(const Partition& pred, const Partition& truth) {
  const auto c = detail::contingency(pred, truth);
  if (c.n == 0) throw UsageError("purity: empty partitions");
  std::int64_t hit = 0;
  for (const auto& row : c.cells)
    hit += *std::max_element(row.begin(), row.end());
  return static_cast<double>(hit) / static_cast<double>(c.n);
}

inline double inverse_purity(const Partition& pred, const Partition& truth) {
  return purity(truth, pred);
}

inline double harmonic_mean(double a, double b) {
  if (a <= 0.0 || b <= 0.0) return 0.0;
  return 2.0 * a * b / (a + b);
}

// Harmonic mean of purity and inverse purity. The arithmetic-mean variant is
// exposed separately for comparison.
inline double pif(const Partition& pred, const Partition& truth) {
  return harmonic_mean(purity(pred, truth), inverse_purity(pred, truth));
}

inline double pif_arithmetic(const Partition& pred, const Partition& truth) {
  return 0.5 * (purity(pred, truth) + inverse_purity(pred, truth));
}

struct BCubedResult {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;  // BCF, harmonic mean
};

inline BCubedResult bcubed(const Partition& pred, const Partition& truth) {
  const auto c = detail::contingency(pred, truth);
  if (c.n == 0) throw UsageError("bcubed: empty partitions");
  const auto lp = detail::compress(pred.labels);
  const auto lt = detail::compress(truth.labels);
  double prec = 0.0, rec = 0.0;
  for (std::size_t i = 0; i < lp.size(); ++i) {
    const auto both = static_cast<double>(c.cells[lp[i]][lt[i]]);
    prec += both / static_cast<double>(c.row_sums[lp[i]]);
    rec += both / static_cast<double>(c.col_sums[lt[i]]);
  }
  BCubedResult r;
  r.precision = prec / static_cast<double>(c.n);
  r.recall = rec / static_cast<double>(c.n);
  r.f = harmonic_mean(r.precision, r.recall);
  return r;
}

inline double bcf(const Partition& pred, const Partition& truth) {
  return bcubed(pred, truth).f;
}

// Adjusted Rand index from the pair-counting contingency form.
inline double ari(const Partition& pred, const Partition& truth) {
  const auto c = detail::contingency(pred, truth);
  if (c.n == 0) throw UsageError("ari: empty partitions");
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& row : c.cells)
    for (std::int64_t v : row) index += detail::choose2(v);
  for (std::int64_t v : c.row_sums) sum_a += detail::choose2(v);
  for (std::int64_t v : c.col_sums) sum_b += detail::choose2(v);
  const double total = detail::choose2(c.n);
  if (total == 0.0) return 1.0;  // single item: identical by definition
  const double expected = sum_a * sum_b / total;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;  // both partitions trivial
  return (index - expected) / (max_index - expected);
}

namespace detail {

inline long double entropy(const std::vector<std::int64_t>& sums,
                           std::int64_t n) {
  long double h = 0.0L;
  for (std::int64_t s : sums) {
    if (s == 0) continue;
    const long double p = static_cast<long double>(s) / n;
    h -= p * std::log(p);
  }
  return h;
}

inline long double mutual_information(const Contingency& c) {
  long double mi = 0.0L;
  const auto n = static_cast<long double>(c.n);
  for (std::size_t i = 0; i < c.cells.size(); ++i) {
    for (std::size_t j = 0; j < c.cells[i].size(); ++j) {
      const std::int64_t nij = c.cells[i][j];
      if (nij == 0) continue;
      const long double p = nij / n;
      mi += p * std::log(n * nij /
                         (static_cast<long double>(c.row_sums[i]) *
                          static_cast<long double>(c.col_sums[j])));
    }
  }
  return mi;
}

// Expected MI under the hypergeometric (fixed margins) model, evaluated with
// a log-factorial table in extended precision.
inline long double expected_mutual_information(const Contingency& c) {
  const std::int64_t n = c.n;
  std::vector<long double> logfact(static_cast<std::size_t>(n) + 1, 0.0L);
  for (std::int64_t i = 2; i <= n; ++i)
    logfact[static_cast<std::size_t>(i)] =
        logfact[static_cast<std::size_t>(i - 1)] + std::log(static_cast<long double>(i));
  const auto lf = [&](std::int64_t k) { return logfact[static_cast<std::size_t>(k)]; };
  long double emi = 0.0L;
  for (std::int64_t a : c.row_sums) {
    for (std::int64_t b : c.col_sums) {
      const std::int64_t lo = std::max<std::int64_t>(1, a + b - n);
      const std::int64_t hi = std::min(a, b);
      for (std::int64_t nij = lo; nij <= hi; ++nij) {
        const long double term =
            (static_cast<long double>(nij) / n) *
            std::log(static_cast<long double>(n) * nij /
                     (static_cast<long double>(a) * b));
        const long double logp = lf(a) + lf(b) + lf(n - a) + lf(n - b) -
                                 lf(n) - lf(nij) - lf(a - nij) - lf(b - nij) -
                                 lf(n - a - b + nij);
        emi += term * std::exp(logp);
      }
    }
  }
  return emi;
}

}  // namespace detail

// Adjusted mutual information, natural logs, arithmetic-mean normalizer.
inline double ami(const Partition& pred, const Partition& truth) {
  const auto c = detail::contingency(pred, truth);
  if (c.n == 0) throw UsageError("ami: empty partitions");
  const long double hu = detail::entropy(c.row_sums, c.n);
  const long double hv = detail::entropy(c.col_sums, c.n);
  if (hu == 0.0L && hv == 0.0L) return 1.0;  // both trivial: identical
  const long double mi = detail::mutual_information(c);
  const long double emi = detail::expected_mutual_information(c);
  const long double denom = 0.5L * (hu + hv) - emi;
  if (std::abs(static_cast<double>(denom)) < 1e-15) return 0.0;
  return static_cast<double>((mi - emi) / denom);
}

// Mann-Whitney AUC; ties count one half. Returns nothing when only one class
// is present.
inline std::optional<double> auc_roc(const std::vector<double>& scores,
                                     const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw ShapeError("auc_roc: scores/labels size mismatch");
  const std::size_t n = scores.size();
  std::size_t npos = 0;
  for (int l : labels) npos += (l != 0);
  const std::size_t nneg = n - npos;
  if (npos == 0 || nneg == 0) return std::nullopt;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  // Average ranks within tie groups (1-based ranks).
  std::vector<double> rank(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  double rank_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (labels[k] != 0) rank_sum += rank[k];
  const double u = rank_sum - 0.5 * static_cast<double>(npos) *
                                  static_cast<double>(npos + 1);
  return u / (static_cast<double>(npos) * static_cast<double>(nneg));
}

// Average precision by step integration over descending score thresholds.
inline std::optional<double> auc_prc(const std::vector<double>& scores,
                                     const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw ShapeError("auc_prc: scores/labels size mismatch");
  const std::size_t n = scores.size();
  std::size_t npos = 0;
  for (int l : labels) npos += (l != 0);
  if (npos == 0) return std::nullopt;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  double ap = 0.0, recall_prev = 0.0;
  std::size_t tp = 0, fp = 0, i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) {
      if (labels[order[k]] != 0)
        ++tp;
      else
        ++fp;
    }
    const double recall = static_cast<double>(tp) / static_cast<double>(npos);
    const double precision =
        static_cast<double>(tp) / static_cast<double>(tp + fp);
    ap += (recall - recall_prev) * precision;
    recall_prev = recall;
    i = j + 1;
  }
  return ap;
}

}  // namespace evtype
