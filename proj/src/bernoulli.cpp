#include "azeta/bernoulli.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace azeta {

BernoulliTable::BernoulliTable() { values_.emplace_back(1); }

BernoulliTable::BernoulliTable(std::filesystem::path cache_file) : cache_(std::move(cache_file)) {
  load_cache();
  if (values_.empty()) values_.emplace_back(1);
}

void BernoulliTable::load_cache() {
  std::ifstream in(*cache_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) break;
    const std::size_t j = std::stoul(line.substr(0, tab));
    // A gap or a torn line ends the trusted prefix.
    if (j != values_.size()) break;
    try {
      values_.push_back(parse_fraction(line.substr(tab + 1)));
    } catch (const std::invalid_argument&) {
      break;
    }
  }
  if (!values_.empty() && values_.front() != 1) values_.clear();
  persisted_ = values_.size();
}

void BernoulliTable::save_locked() const {
  if (!cache_ || values_.size() == persisted_) return;
  const auto dir = cache_->parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  auto tmp = *cache_;
  tmp += ".tmp." + std::to_string(reinterpret_cast<std::uintptr_t>(this));
  {
    std::ofstream out(tmp, std::ios::trunc);
    for (std::size_t j = 0; j < values_.size(); ++j) {
      out << j << '\t' << to_fraction_string(values_[j]) << '\n';
    }
    if (!out) throw std::runtime_error("bernoulli cache: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, *cache_);
}

void BernoulliTable::extend_locked(std::size_t j) {
  // Sums run over integers scaled_[k] = B_k·common_den_.
  if (scaled_.size() != values_.size()) {
    common_den_ = 1;
    for (const auto& b : values_) mpz_lcm(common_den_.get_mpz_t(), common_den_.get_mpz_t(), b.get_den().get_mpz_t());
    scaled_.clear();
    for (const auto& b : values_) scaled_.push_back(b.get_num() * (common_den_ / b.get_den()));
  }
  while (values_.size() <= j) {
    const std::size_t m = values_.size();
    Integer sum = 0;
    Integer c = 1;  // C(m+1, k)
    for (std::size_t k = 0; k < m; ++k) {
      if (scaled_[k] != 0) mpz_addmul(sum.get_mpz_t(), c.get_mpz_t(), scaled_[k].get_mpz_t());
      c *= static_cast<unsigned long>(m + 1 - k);
      c /= static_cast<unsigned long>(k + 1);
    }
    Rational b(-sum, common_den_ * static_cast<unsigned long>(m + 1));
    b.canonicalize();
    if (!mpz_divisible_p(common_den_.get_mpz_t(), b.get_den().get_mpz_t())) {
      Integer next;
      mpz_lcm(next.get_mpz_t(), common_den_.get_mpz_t(), b.get_den().get_mpz_t());
      const Integer factor = next / common_den_;
      for (auto& x : scaled_) x *= factor;
      common_den_ = next;
    }
    scaled_.push_back(b.get_num() * (common_den_ / b.get_den()));
    values_.push_back(std::move(b));
  }
}

const Rational& BernoulliTable::get(std::size_t j) {
  {
    std::shared_lock lock(mu_);
    if (j < values_.size()) return values_[j];
  }
  ensure(j);
  std::shared_lock lock(mu_);
  return values_[j];
}

void BernoulliTable::ensure(std::size_t j) {
  std::unique_lock lock(mu_);
  if (j < values_.size()) return;
  extend_locked(j);
  save_locked();
  persisted_ = values_.size();
}

std::size_t BernoulliTable::size() const {
  std::shared_lock lock(mu_);
  return values_.size();
}

void BernoulliTable::flush() const {
  std::unique_lock lock(mu_);
  save_locked();
}

BernoulliTable& BernoulliTable::global() {
  static BernoulliTable table = [] {
    if (const char* dir = std::getenv("AZETA_CACHE_DIR"); dir != nullptr && *dir != '\0') {
      return BernoulliTable(std::filesystem::path(dir) / "bernoulli.tsv");
    }
    return BernoulliTable();
  }();
  return table;
}

Rational bernoulli(std::size_t j) { return BernoulliTable::global().get(j); }

}  // namespace azeta
