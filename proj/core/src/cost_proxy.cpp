#include "wattagent/cost_proxy.hpp"

#include <sstream>

#include "wattagent/errors.hpp"

namespace wattagent {

void CostProxyInputs::validate() const {
    if (token_price.value < 0.0) {
        throw ValidationError("token price must be nonnegative");
    }
    if (energy_price.value <= 0.0) {
        throw ValidationError("energy price must be positive");
    }
    if (energy_cost_share.lo <= 0.0 || energy_cost_share.hi > 1.0) {
        throw ValidationError("energy cost share must lie in (0, 1]");
    }
}

ModelEnergyProfile cost_proxy_energy_per_token(const CostProxyInputs& inputs,
                                               std::string model_name) {
    inputs.validate();
    const double lo = inputs.energy_cost_share.lo * inputs.token_price.value /
                      inputs.energy_price.value;
    const double hi = inputs.energy_cost_share.hi * inputs.token_price.value /
                      inputs.energy_price.value;

    std::ostringstream note;
    note << "cost proxy: share ";
    if (inputs.energy_cost_share.is_point()) {
        note << inputs.energy_cost_share.lo;
    } else {
        note << "[" << inputs.energy_cost_share.lo << ", " << inputs.energy_cost_share.hi << "]";
    }
    note << " x token price " << inputs.token_price.value << " $/token / energy price "
         << inputs.energy_price.value << " $/Wh";

    ModelEnergyProfile profile;
    profile.name = std::move(model_name);
    profile.energy_per_token_wh = Interval(lo, hi);
    profile.source = EnergySource::CostProxy;
    profile.provenance = note.str();
    return profile;
}

} // namespace wattagent
