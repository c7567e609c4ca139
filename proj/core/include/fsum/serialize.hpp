#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fsum/classes.hpp"
#include "fsum/harness.hpp"
#include "fsum/kernels.hpp"
#include "fsum/moduli.hpp"

namespace fsum {

// Compact JSON text for each report type. Non-finite numbers become null.
std::string to_json(const KernelBoundReport& r);
std::string to_json(const DirichletBoundReport& r);
std::string to_json(const ClassReport& r);
std::string to_json(const ExactClassReport& r);
std::string to_json(const SeparatingWitness& w);
std::string to_json(const ConditionReport& r);
std::string to_json(const TailImplication& r);
std::string to_json(const MembershipReport& r);
std::string to_json(const RateReport& r);
std::string to_json(const CorollaryRow& r);

/// `n,error,bound,ratio`
void write_rate_csv(const RateReport& r, const std::filesystem::path& path);
/// `delta,omega_beta,omega,ratio`
void write_membership_csv(const MembershipReport& r, const std::filesystem::path& path);
/// Generic numeric table; values printed with 17 significant digits.
void write_table_csv(const std::filesystem::path& path, std::span<const std::string> columns,
                     const std::vector<std::vector<double>>& rows);

std::string markdown_table(std::span<const RateReport> reports);
std::string markdown_table(std::span<const CorollaryRow> rows);

}  // namespace fsum
