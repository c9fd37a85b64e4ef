#include "paretokit/core.hpp"

namespace paretokit {

const char* to_string(Encoding e) {
    return e == Encoding::binary ? "binary" : "real";
}

Encoding encoding_from_string(const std::string& s) {
    if (s == "real") {
        return Encoding::real;
    }
    if (s == "binary") {
        return Encoding::binary;
    }
    throw ConfigError("unknown encoding '" + s + "'");
}

} // namespace paretokit
