#include "daub/errors.hpp"

#include <string>

namespace daub {

UnsupportedOrder::UnsupportedOrder(int p)
    : Error("unsupported-order",
            "unsupported vanishing-moment count p=" + std::to_string(p) + "; valid range is [2, 19]") {}

DerivativeUnavailable::DerivativeUnavailable(int p, int n, const std::string& reason)
    : Error("derivative-unavailable",
            "derivative of order " + std::to_string(n) + " is unavailable for p=" + std::to_string(p) + ": " +
                reason) {}

UnsupportedDerivative::UnsupportedDerivative(int p, int order, int max_order)
    : Error("unsupported-derivative", "derivative of order " + std::to_string(order) +
                                          " is not provided for p=" + std::to_string(p) +
                                          "; available orders are 0.." + std::to_string(max_order)) {}

BudgetExceeded::BudgetExceeded(std::size_t requested, std::size_t budget)
    : Error("budget-exceeded", "grid would need " + std::to_string(requested) + " bytes, budget is " +
                                   std::to_string(budget) + " bytes") {}

}  // namespace daub
