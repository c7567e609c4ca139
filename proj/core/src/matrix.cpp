#include "fsum/matrix.hpp"

#include <cmath>
#include <map>
#include <utility>

#include "csv.hpp"
#include "fsum/error.hpp"
#include "fsum/numeric.hpp"

namespace fsum {

SummabilityMatrix::SummabilityMatrix(std::vector<double> packed, std::size_t n_max, std::string name)
    : packed_(std::move(packed)), n_max_(n_max), name_(std::move(name)) {
  for (std::size_t n = 0; n <= n_max_; ++n) {
    const auto r = row(n);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (!std::isfinite(r[k]) || r[k] < 0.0) {
        throw Error(ErrorKind::InvalidMatrix, name_ + ": entry a[" + std::to_string(n) + "][" +
                                                  std::to_string(k) + "] is negative or non-finite");
      }
    }
    const double s = compensated_sum(r);
    if (std::abs(s - 1.0) > kRowSumTolerance) {
      throw Error(ErrorKind::InvalidMatrix, name_ + ": row " + std::to_string(n) + " sums to " +
                                                detail::format_double(s));
    }
  }
}

SummabilityMatrix SummabilityMatrix::from_rows(const std::vector<std::vector<double>>& rows,
                                               std::string name) {
  if (rows.empty()) throw Error(ErrorKind::InvalidMatrix, name + ": no rows");
  std::vector<double> packed;
  packed.reserve(offset(rows.size()));
  for (std::size_t n = 0; n < rows.size(); ++n) {
    if (rows[n].size() != n + 1) {
      throw Error(ErrorKind::InvalidMatrix,
                  name + ": row " + std::to_string(n) + " must have " + std::to_string(n + 1) + " entries");
    }
    packed.insert(packed.end(), rows[n].begin(), rows[n].end());
  }
  return SummabilityMatrix(std::move(packed), rows.size() - 1, std::move(name));
}

std::span<const double> SummabilityMatrix::row(std::size_t n) const {
  if (n > n_max_) {
    throw Error(ErrorKind::RowOutOfRange,
                "row " + std::to_string(n) + " exceeds n_max " + std::to_string(n_max_));
  }
  return {packed_.data() + offset(n), n + 1};
}

double SummabilityMatrix::operator()(std::size_t n, std::size_t k) const {
  const auto r = row(n);
  return k <= n ? r[k] : 0.0;
}

NorlundWeights::NorlundWeights(std::vector<double> p, std::string name)
    : p_(std::move(p)), name_(std::move(name)) {
  if (p_.empty()) throw Error(ErrorKind::InvalidParams, "empty weight sequence");
  cumulative_.resize(p_.size());
  CompensatedSum running;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!std::isfinite(p_[i]) || p_[i] < 0.0) {
      throw Error(ErrorKind::InvalidParams, "weight p_" + std::to_string(i) + " is negative or non-finite");
    }
    running.add(p_[i]);
    cumulative_[i] = running.value();
  }
}

NorlundWeights NorlundWeights::ones(std::size_t length) {
  return NorlundWeights(std::vector<double>(length, 1.0), "ones");
}

NorlundWeights NorlundWeights::harmonic(std::size_t length) {
  std::vector<double> p(length);
  for (std::size_t v = 0; v < length; ++v) p[v] = 1.0 / static_cast<double>(v + 1);
  return NorlundWeights(std::move(p), "harmonic");
}

NorlundWeights NorlundWeights::geometric(std::size_t length, double ratio) {
  std::vector<double> p(length);
  for (std::size_t v = 0; v < length; ++v) p[v] = std::pow(ratio, static_cast<double>(v));
  return NorlundWeights(std::move(p), "geometric");
}

NorlundWeights NorlundWeights::linear(std::size_t length) {
  std::vector<double> p(length);
  for (std::size_t v = 0; v < length; ++v) p[v] = static_cast<double>(v + 1);
  return NorlundWeights(std::move(p), "linear");
}

bool NorlundWeights::nonincreasing() const noexcept {
  for (std::size_t i = 1; i < p_.size(); ++i) {
    if (p_[i] > p_[i - 1]) return false;
  }
  return true;
}

SummabilityMatrix fejer_matrix(std::size_t n_max) {
  std::vector<std::vector<double>> rows(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    rows[n].assign(n + 1, 1.0 / static_cast<double>(n + 1));
  }
  return SummabilityMatrix::from_rows(rows, "fejer");
}

namespace {

void require_weights(const NorlundWeights& w, std::size_t n_max) {
  if (w.size() < n_max + 1) {
    throw Error(ErrorKind::InvalidParams, "weight sequence '" + w.name() + "' has " +
                                              std::to_string(w.size()) + " terms, need " +
                                              std::to_string(n_max + 1));
  }
  const auto cumulative = w.cumulative();
  for (std::size_t v = 0; v <= n_max; ++v) {
    if (!(cumulative[v] > 0.0)) {
      throw Error(ErrorKind::ZeroCumulativeWeight, "P_" + std::to_string(v) + " = 0");
    }
  }
}

}  // namespace

SummabilityMatrix lal_matrix(const NorlundWeights& weights, std::size_t n_max) {
  require_weights(weights, n_max);
  const auto p = weights.p();
  const auto cumulative = weights.cumulative();

  // inner[k] tracks sum_{v=k}^{n} p_{v-k}/P_v as n grows; compensated so the
  // row sums stay within tolerance for large n_max.
  std::vector<CompensatedSum> inner(n_max + 1);
  std::vector<std::vector<double>> rows(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double inv_pn = 1.0 / cumulative[n];
    for (std::size_t k = 0; k <= n; ++k) inner[k].add(p[n - k] * inv_pn);
    auto& r = rows[n];
    r.resize(n + 1);
    const double scale = 1.0 / static_cast<double>(n + 1);
    for (std::size_t k = 0; k <= n; ++k) r[k] = inner[k].value() * scale;
  }
  return SummabilityMatrix::from_rows(rows, "lal-" + weights.name());
}

SummabilityMatrix norlund_matrix(const NorlundWeights& weights, std::size_t n_max) {
  require_weights(weights, n_max);
  const auto p = weights.p();
  const auto cumulative = weights.cumulative();
  std::vector<std::vector<double>> rows(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    rows[n].resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) rows[n][k] = p[n - k] / cumulative[n];
  }
  return SummabilityMatrix::from_rows(rows, "norlund-" + weights.name());
}

TailSums tail_sums(const SummabilityMatrix& a, std::size_t n) {
  const auto r = a.row(n);
  TailSums out;
  out.forward.resize(n + 1);
  out.backward.resize(n + 1);
  CompensatedSum fwd;
  for (std::size_t m = 0; m <= n; ++m) {
    fwd.add(r[m]);
    out.forward[m] = fwd.value();
  }
  CompensatedSum bwd;
  for (std::size_t m = n + 1; m-- > 0;) {
    bwd.add(r[m]);
    out.backward[m] = bwd.value();
  }
  return out;
}

void write_matrix_csv(const SummabilityMatrix& a, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  out << "n,k,a\n";
  for (std::size_t n = 0; n <= a.n_max(); ++n) {
    const auto r = a.row(n);
    for (std::size_t k = 0; k <= n; ++k) {
      out << n << ',' << k << ',' << detail::format_double(r[k]) << '\n';
    }
  }
}

SummabilityMatrix read_matrix_csv(const std::filesystem::path& path) {
  const auto table = detail::read_numeric_csv(path, "n,k,a");
  std::map<std::pair<std::size_t, std::size_t>, double> entries;
  std::size_t n_max = 0;
  for (const auto& row : table) {
    if (row[0] < 0 || row[1] < 0 || row[0] != std::floor(row[0]) || row[1] != std::floor(row[1])) {
      throw Error(ErrorKind::ParseError, path.string() + ": indices must be nonnegative integers");
    }
    const auto n = static_cast<std::size_t>(row[0]);
    const auto k = static_cast<std::size_t>(row[1]);
    if (k > n) {
      throw Error(ErrorKind::InvalidMatrix, path.string() + ": entry above the diagonal (k > n)");
    }
    entries[{n, k}] = row[2];
    n_max = std::max(n_max, n);
  }
  if (entries.empty()) throw Error(ErrorKind::InvalidMatrix, path.string() + ": no entries");
  // Missing entries on or below the diagonal are zeros.
  std::vector<std::vector<double>> rows(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) rows[n].assign(n + 1, 0.0);
  for (const auto& [index, value] : entries) rows[index.first][index.second] = value;
  return SummabilityMatrix::from_rows(rows, path.stem().string());
}

void write_weights_csv(const NorlundWeights& w, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  out << "nu,p\n";
  const auto p = w.p();
  for (std::size_t v = 0; v < p.size(); ++v) out << v << ',' << detail::format_double(p[v]) << '\n';
}

NorlundWeights read_weights_csv(const std::filesystem::path& path) {
  const auto table = detail::read_numeric_csv(path, "nu,p");
  std::vector<double> p(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i][0] != static_cast<double>(i)) {
      throw Error(ErrorKind::ParseError, path.string() + ": nu must run 0, 1, 2, ... without gaps");
    }
    p[i] = table[i][1];
  }
  return NorlundWeights(std::move(p), path.stem().string());
}

}  // namespace fsum
