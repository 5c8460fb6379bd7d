#pragma once

#include <string>

#include "wattagent/energy_profile.hpp"
#include "wattagent/interval.hpp"
#include "wattagent/units.hpp"

namespace wattagent {

// Inputs for the price-proxy estimate of energy per token: of the price a
// provider charges per token, some share pays for electricity; dividing that
// share of the token price by the electricity price yields Wh per token.
struct CostProxyInputs {
    MoneyPerToken token_price;      // $/token
    MoneyPerWh energy_price;        // $/Wh (quote per kWh via MoneyPerWh::from_per_kwh)
    Interval energy_cost_share{0.5, 0.5}; // fraction of token price paying for energy, in (0, 1]

    void validate() const;
};

// e = share * token_price / energy_price, evaluated in that order so results
// are bit-reproducible. An interval share produces an interval profile.
ModelEnergyProfile cost_proxy_energy_per_token(const CostProxyInputs& inputs,
                                               std::string model_name = "cost-proxy-model");

} // namespace wattagent
