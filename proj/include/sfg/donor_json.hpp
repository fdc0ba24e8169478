#pragma once

#include "sfg/donor.hpp"
#include "sfg/json_document.hpp"

namespace sfg::donor {

json::Json to_json(const DonorModel& model);

/// Reads a full model object; effective_bohr_radius is derived when absent.
DonorModel model_from_json(const json::Document& doc, const json::Json& object, const std::string& pointer);

}  // namespace sfg::donor
