#include "circlelab/report.hpp"

#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "circlelab/errors.hpp"

namespace circlelab::report {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV offset basis
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;  // FNV prime
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<size_t>(i)] = digits[h & 0xf];
    return s;
}

std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

std::string cf_prefix_string(const std::vector<mpz_class>& ks) {
    std::string s = "[";
    for (size_t i = 0; i < ks.size(); ++i) {
        if (i) s += ",";
        s += ks[i].get_str();
    }
    return s + "]";
}

}  // namespace

std::string Provenance::csv_comment_block() const {
    std::ostringstream os;
    os << "# circlelab report\n";
    os << "# experiment: " << experiment << "\n";
    os << "# config_hash: " << config_hash << "\n";
    os << "# precision_bits: " << precision_bits << "\n";
    os << "# map: " << (map_descriptor.empty() ? "none" : map_descriptor) << "\n";
    os << "# rho: " << (rho_decimal.empty() ? "-" : rho_decimal) << "\n";
    os << "# rho_cf: " << cf_prefix_string(rho_cf) << "\n";
    os << "# timestamp: " << timestamp << "\n";
    return os.str();
}

void Provenance::add_to(nlohmann::ordered_json& j) const {
    j["experiment"] = experiment;
    j["config_hash"] = config_hash;
    j["precision_bits"] = precision_bits;
    j["map"] = map_descriptor.empty() ? "none" : map_descriptor;
    j["rho"] = rho_decimal;
    auto cf = nlohmann::ordered_json::array();
    for (const auto& k : rho_cf) {
        if (k.fits_slong_p())
            cf.push_back(k.get_si());
        else
            cf.push_back(k.get_str());
    }
    j["rho_cf"] = cf;
    j["timestamp"] = timestamp;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    try {
        fs::path target(path);
        if (target.has_parent_path()) fs::create_directories(target.parent_path());
        fs::path tmp = target;
        tmp += ".tmp";
        {
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            os << content;
            os.flush();
            if (!os)
                throw ResourceError("report: failed writing " + tmp.string());
        }
        fs::rename(tmp, target);
    } catch (const fs::filesystem_error& e) {
        throw ResourceError(std::string("report: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ResourceError("report: cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::string strip_timestamp_lines(const std::string& content) {
    std::istringstream is(content);
    std::ostringstream os;
    std::string line;
    while (std::getline(is, line)) {
        if (line.find("timestamp") != std::string::npos) continue;
        os << line << "\n";
    }
    return os.str();
}

}  // namespace circlelab::report
