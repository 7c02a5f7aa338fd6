#pragma once

#include "wittenlab/profiles.hpp"
#include "wittenlab/ssf.hpp"
#include "wittenlab/witten.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace wittenlab {

using Json = nlohmann::ordered_json;

/// Every emitted floating-point value goes through this: 12 significant digits.
std::string format_number(double x);
/// x rounded to 12 significant digits (NaN and infinities pass through).
double round12(double x);

/// {"kind": ..., "amplitude": ..., "width": ..., "support": ...?}; throws InvalidArgument.
PotentialProfile profile_from_json(const Json& j);
/// Reads a descriptor file; the error message names the path.
PotentialProfile profile_from_file(const std::filesystem::path& path);
Json profile_to_json(const PotentialProfile& profile);

/// Two columns with a header row ("nu,xi" or "lambda,xi"), LF line endings.
void write_curve_csv(std::ostream& out, const SSFCurve& curve);
Json curve_to_json(const SSFCurve& curve);

Json report_to_json(const WittenReport& report);
Json report_to_json(const KreinReport& report);
Json report_to_json(const Eq1Report& report);

/// Writes text to path, creating parent directories; LF line endings are preserved.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace wittenlab
