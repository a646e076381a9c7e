#include "circlelab/orbit_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "circlelab/errors.hpp"

namespace circlelab::circlemap {

namespace {

constexpr const char* kMagic = "orbitcache 1";

const char* family_tag(Family f) {
    switch (f) {
        case Family::RigidRotation: return "rigid";
        case Family::SineFamily: return "sine";
        case Family::WeierstrassFamily: return "weierstrass";
    }
    throw DomainError("orbit_io: unknown family enum value");
}

void write_param(std::ostream& os, const char* name, const BigFloat& v) {
    os << "param " << name << " " << v.precision() << " " << v.to_decimal() << "\n";
}

struct HeaderParam {
    mpfr_prec_t prec;
    std::string dec;
};

BigFloat parse_param(const std::map<std::string, HeaderParam>& params, const std::string& name) {
    auto it = params.find(name);
    if (it == params.end())
        throw DomainError("orbit_io: missing parameter '" + name + "' in header");
    return BigFloat::from_string(it->second.dec, it->second.prec);
}

long parse_long(const std::map<std::string, HeaderParam>& params, const std::string& name) {
    auto it = params.find(name);
    if (it == params.end())
        throw DomainError("orbit_io: missing parameter '" + name + "' in header");
    return std::stol(it->second.dec);
}

}  // namespace

void save_orbit(const OrbitCache& orbit, const std::string& path) {
    if (orbit.size() < 1) throw DomainError("orbit_io: refusing to save an empty cache");
    if (orbit.seed.precision() != orbit.prec)
        throw DomainError("orbit_io: seed precision differs from the cache precision");
    for (long i = 0; i < orbit.size(); ++i)
        if (orbit[i].precision() != orbit.prec)
            throw DomainError("orbit_io: point precision differs from the cache precision");

    const std::string tmp = path + ".tmp";
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw ResourceError("orbit_io: cannot open '" + tmp + "' for writing");

    os << kMagic << "\n";
    os << "family " << family_tag(orbit.map.family()) << "\n";
    os << "precision " << orbit.prec << "\n";
    os << "length " << orbit.size() << "\n";
    write_param(os, "omega", orbit.map.omega());
    if (orbit.map.family() != Family::RigidRotation)
        write_param(os, "coupling", orbit.map.coupling());
    if (orbit.map.family() == Family::WeierstrassFamily) {
        write_param(os, "beta", orbit.map.holder_beta());
        os << "param lambda 0 " << orbit.map.lambda() << "\n";
        os << "param terms 0 " << orbit.map.terms() << "\n";
    }
    os << "seed " << orbit.seed.to_hex_record() << "\n";
    os << "points\n";
    for (long i = 0; i < orbit.size(); ++i) os << orbit[i].to_hex_record() << "\n";
    os.close();
    if (!os) throw ResourceError("orbit_io: write to '" + tmp + "' failed");
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ResourceError("orbit_io: cannot move '" + tmp + "' into place");
}

OrbitCache load_orbit(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ResourceError("orbit_io: cannot open '" + path + "' for reading");

    std::string line;
    if (!std::getline(is, line) || line != kMagic)
        throw DomainError("orbit_io: '" + path + "' is not an orbit cache file");

    std::string family;
    mpfr_prec_t prec = 0;
    long length = -1;
    std::string seed_rec;
    std::map<std::string, HeaderParam> params;

    while (std::getline(is, line)) {
        if (line == "points") break;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "family") {
            ls >> family;
        } else if (key == "precision") {
            long p = 0;
            ls >> p;
            prec = static_cast<mpfr_prec_t>(p);
        } else if (key == "length") {
            ls >> length;
        } else if (key == "seed") {
            ls >> seed_rec;
        } else if (key == "param") {
            std::string name;
            long p = 0;
            std::string dec;
            ls >> name >> p >> dec;
            if (name.empty() || dec.empty())
                throw DomainError("orbit_io: malformed param line '" + line + "'");
            params[name] = HeaderParam{static_cast<mpfr_prec_t>(p), dec};
        } else {
            throw DomainError("orbit_io: unexpected header line '" + line + "'");
        }
        if (ls.fail()) throw DomainError("orbit_io: malformed header line '" + line + "'");
    }
    if (prec < 2 || length < 1 || family.empty() || seed_rec.empty())
        throw DomainError("orbit_io: incomplete header in '" + path + "'");

    CircleMapSpec map = [&] {
        if (family == "rigid") return CircleMapSpec::rigid_rotation(parse_param(params, "omega"));
        if (family == "sine")
            return CircleMapSpec::sine_family(parse_param(params, "omega"),
                                              parse_param(params, "coupling"));
        if (family == "weierstrass")
            return CircleMapSpec::weierstrass_family(
                parse_param(params, "omega"), parse_param(params, "coupling"),
                parse_param(params, "beta"), parse_long(params, "lambda"),
                parse_long(params, "terms"));
        throw DomainError("orbit_io: unknown family tag '" + family + "'");
    }();

    OrbitCache oc{std::move(map), BigFloat::from_hex_record(seed_rec, prec), {}, prec};
    oc.pts.reserve(static_cast<size_t>(length));
    for (long i = 0; i < length; ++i) {
        if (!std::getline(is, line))
            throw DomainError("orbit_io: '" + path + "' truncated at point " + std::to_string(i));
        oc.pts.push_back(BigFloat::from_hex_record(line, prec));
    }
    if (std::getline(is, line) && !line.empty())
        throw DomainError("orbit_io: trailing data after the declared points");
    return oc;
}

}  // namespace circlelab::circlemap
