#include "gep/types.hpp"

#include <stdexcept>

namespace gep {

std::string to_string(ThermalTech t) {
    switch (t) {
        case ThermalTech::gas_syn: return "gas_syn";
        case ThermalTech::gas_ccs: return "gas_ccs";
        case ThermalTech::biomass: return "biomass";
        case ThermalTech::nuclear: return "nuclear";
        case ThermalTech::other: return "other";
    }
    return "other";
}

std::string to_string(StorageKind k) {
    switch (k) {
        case StorageKind::dam: return "dam";
        case StorageKind::pump: return "pump";
        case StorageKind::battery: return "battery";
    }
    return "battery";
}

std::string to_string(RenewableTech t) {
    switch (t) {
        case RenewableTech::pv: return "pv";
        case RenewableTech::wind: return "wind";
        case RenewableTech::ror: return "ror";
    }
    return "pv";
}

std::string to_string(ReserveProduct p) {
    switch (p) {
        case ReserveProduct::scr_up: return "scr_up";
        case ReserveProduct::scr_down: return "scr_dn";
        case ReserveProduct::tcr_up: return "tcr_up";
        case ReserveProduct::tcr_down: return "tcr_dn";
    }
    return "scr_up";
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unbounded: return "unbounded";
        case SolveStatus::iteration_limit: return "iteration_limit";
    }
    return "infeasible";
}

ThermalTech parse_thermal_tech(const std::string& s) {
    if (s == "gas_syn") return ThermalTech::gas_syn;
    if (s == "gas_ccs") return ThermalTech::gas_ccs;
    if (s == "biomass") return ThermalTech::biomass;
    if (s == "nuclear") return ThermalTech::nuclear;
    if (s == "other") return ThermalTech::other;
    throw std::invalid_argument("unknown thermal technology '" + s + "'");
}

StorageKind parse_storage_kind(const std::string& s) {
    if (s == "dam") return StorageKind::dam;
    if (s == "pump") return StorageKind::pump;
    if (s == "battery") return StorageKind::battery;
    throw std::invalid_argument("unknown storage kind '" + s + "'");
}

RenewableTech parse_renewable_tech(const std::string& s) {
    if (s == "pv") return RenewableTech::pv;
    if (s == "wind") return RenewableTech::wind;
    if (s == "ror") return RenewableTech::ror;
    throw std::invalid_argument("unknown renewable technology '" + s + "'");
}

const BusNode* SystemModel::find_node(const std::string& id) const {
    for (const auto& n : nodes) {
        if (n.id == id) return &n;
    }
    return nullptr;
}

}  // namespace gep
