#pragma once

#include <string_view>

// Contents of data/*.txt, compiled in so the library has no runtime file
// dependencies. Generated at configure time.
namespace seqenrich::embedded {

extern const std::string_view kLexicon;
extern const std::string_view kPhraseBanks;

}  // namespace seqenrich::embedded
