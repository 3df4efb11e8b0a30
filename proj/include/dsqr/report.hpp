#pragma once

#include "json.hpp"

#include "dsqr/format.hpp"
#include "dsqr/mirror.hpp"
#include "dsqr/verify.hpp"

namespace dsqr {

nlohmann::json to_json(const ConstructionReport& report);
nlohmann::json to_json(const DecodeReport& report);
nlohmann::json to_json(const MirrorFormat& fmt);
nlohmann::json to_json(const ErrorAllocation& alloc);

// {"stage": ..., "message": ...}
nlohmann::json error_json(const Error& e);

}  // namespace dsqr
