#pragma once

#include <map>
#include <string>
#include <vector>

#include "scp/instance.hpp"

namespace scp {

/// Entropy-weights output with intermediates retained for audit.
struct QualityWeights {
  std::map<std::string, double> omega;                         // part -> weight, sums to 1
  std::map<std::string, std::map<std::string, double>> xi;     // part -> supplier -> normalized quality
  std::map<std::string, std::map<std::string, double>> rho;    // part -> supplier -> probability value
  std::map<std::string, double> entropy;                       // part -> epsilon_i
  std::map<std::string, double> divergence;                    // part -> psi_i
};

/// Entropy weights from supplier quality dispersion. Requires a filtered
/// instance where every part kept at least one supplier. Degenerates to
/// uniform weights when all divergences vanish.
QualityWeights ewm_weights(const Instance& instance);

/// One receipt: quantity of a part obtained from a supplier (any day/mode).
struct Receipt {
  std::string part_id;
  std::string supplier_id;
  double quantity{};
};

/// Receipt-weighted average quality of the batch. Throws EmptyBatch when the
/// weighted receipt total is zero.
double batch_quality(const std::vector<Receipt>& receipts, const QualityWeights& weights,
                     const Instance& instance);

/// Quality-driven extra pre-orders: floor((q - Q^b) * kappa * D1), floored at 0.
int demand_uplift(double q, const CustomerSpec& customer, const EmSpec& em);

}  // namespace scp
