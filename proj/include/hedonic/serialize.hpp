#pragma once

#include "hedonic/benchmarks.hpp"
#include "hedonic/equilibrium.hpp"
#include "hedonic/extensions.hpp"
#include "hedonic/spectral.hpp"
#include "hedonic/types.hpp"
#include "hedonic/welfare.hpp"

#include <json.hpp>

#include <string>

namespace hedonic {

using json = nlohmann::json;

// Matrices travel as row-major nested arrays, vectors as flat arrays.
json to_json(const Vec& v);
json to_json(const Mat& m);
Vec vec_from_json(const json& j, const char* what);
Mat mat_from_json(const json& j, const char* what);

json to_json(const MarketInstance& inst);
MarketInstance instance_from_json(const json& j, double tol = 1e-10);
MarketInstance load_instance(const std::string& path_or_inline, bool is_inline,
                             double tol = 1e-10);

json to_json(const CharProfile& profile);
json to_json(const Allocation& alloc);
json to_json(const BenchmarkResult& r);
json to_json(const EquilibriumRecord& r);
json to_json(const VerifyReport& r);
json to_json(const WelfareComparison& c);
json to_json(const NetworkOutputs& o);
json to_json(const OwnershipEquilibrium& e);
json to_json(const SpectralReport& r);

SpectralInstance spectral_from_json(const json& j);

// 12 significant digits, shortest form ("%.12g"); missing cells are empty.
std::string csv_field(double v);

}  // namespace hedonic
