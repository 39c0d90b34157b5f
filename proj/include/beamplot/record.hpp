#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace beamplot {

/// One paper from a Web of Science export. Only ut, pub_year and
/// times_cited drive the statistics; the rest is carried for reporting.
struct PublicationRecord {
    std::string ut;
    int pub_year = 0;
    std::int64_t times_cited = 0;
    std::string title;
    std::vector<std::string> authors;
    std::string source;
    std::string doc_type;

    friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

} // namespace beamplot
