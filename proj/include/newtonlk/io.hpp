#pragma once

// Sample CSV and report JSON serialization.

#include "newtonlk/verify.hpp"

#include "json.hpp"

#include <string>
#include <string_view>

namespace newtonlk {

using Json = nlohmann::ordered_json;

class IoError : public Error {
public:
    using Error::Error;
};

/// Header u_1..u_n, x_0..x_{n+1}, Lkx_0..Lkx_{n+1}; values with 17 significant digits.
std::string write_samples_csv(const SampleSet& samples);

/// Parses the format written by write_samples_csv. The order k and the
/// curvature sign c are not part of the file. Throws SchemaError with row
/// and column on malformed input.
SampleSet read_samples_csv(std::string_view text, int k, int c);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

/// JSON text with every floating value printed with 17 significant digits
/// (non-finite values become null).
std::string dump_json(const Json& value, int indent = 2);

Json to_json(const Mat& m);
Json to_json(const Vec& v);

}  // namespace newtonlk
