#include "pnfield/sbox_file.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "pnfield/error.hpp"

namespace pnfield {

namespace {

constexpr std::string_view kMagic = "# pnfield-sbox v1";

std::uint64_t parse_u64(std::string_view token, std::string_view what) {
    std::uint64_t value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end || token.empty()) {
        throw ParseError("invalid " + std::string(what) + ": '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

std::uint32_t SBoxFile::dimension() const {
    std::uint32_t d = 0;
    for (std::uint64_t size = 1; size < table.size(); size *= field.order()) ++d;
    return d;
}

std::string format_sbox_file(const FieldSpec& field, std::span<const Label> table, std::size_t codomain_size) {
    std::ostringstream out;
    out << kMagic << " p=" << field.p() << " m=" << field.m() << " modulus=" << field.modulus()
        << " gamma=" << field.gamma() << " n=" << table.size();
    if (codomain_size != field.order()) out << " codomain=" << codomain_size;
    out << '\n';
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << table[i] << ((i + 1) % 16 == 0 || i + 1 == table.size() ? '\n' : ' ');
    }
    return out.str();
}

SBoxFile parse_sbox_file(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_header = false;
    std::map<std::string, std::uint64_t> keys;
    std::vector<Label> entries;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!have_header) {
            if (line.find_first_not_of(" \t") == std::string::npos) continue;
            if (line.rfind(kMagic, 0) != 0) throw ParseError("missing '# pnfield-sbox v1' header");
            std::istringstream header(line.substr(kMagic.size()));
            std::string token;
            while (header >> token) {
                const auto eq = token.find('=');
                if (eq == std::string::npos) throw ParseError("malformed header field '" + token + "'");
                const std::string key = token.substr(0, eq);
                if (key != "p" && key != "m" && key != "modulus" && key != "gamma" && key != "n" && key != "codomain") {
                    throw ParseError("unknown header key '" + key + "'");
                }
                if (!keys.emplace(key, parse_u64(std::string_view(token).substr(eq + 1), key)).second) {
                    throw ParseError("duplicate header key '" + key + "'");
                }
            }
            for (const char* required : {"p", "m", "modulus", "gamma", "n"}) {
                if (!keys.count(required)) throw ParseError(std::string("header lacks '") + required + "='");
            }
            have_header = true;
            continue;
        }
        if (!line.empty() && line.front() == '#') continue;
        std::istringstream body(line);
        std::string token;
        while (body >> token) {
            const std::uint64_t v = parse_u64(token, "entry");
            if (v > UINT32_MAX) throw ParseError("entry out of range: " + token);
            entries.push_back(static_cast<Label>(v));
        }
    }
    if (!have_header) throw ParseError("empty S-box file");

    const std::string description = std::to_string(keys["p"]) + " " + std::to_string(keys["m"]) + " " +
                                    std::to_string(keys["modulus"]) + " " + std::to_string(keys["gamma"]);
    SBoxFile file{FieldSpec::from_description(description), std::move(entries), 0};
    if (file.table.size() != keys["n"]) {
        throw ParseError("header declares n=" + std::to_string(keys["n"]) + " but the body has " +
                         std::to_string(file.table.size()) + " entries");
    }
    std::uint64_t size = file.field.order();
    while (size < file.table.size()) size *= file.field.order();
    if (size != file.table.size()) {
        throw ParseError("table length " + std::to_string(file.table.size()) + " is not a power of " +
                         std::to_string(file.field.order()));
    }
    file.codomain_size = keys.count("codomain") ? keys["codomain"] : file.field.order();
    for (std::size_t i = 0; i < file.table.size(); ++i) {
        if (file.table[i] >= file.codomain_size) {
            throw ParseError("entry " + std::to_string(file.table[i]) + " at position " + std::to_string(i) +
                             " is outside [0, " + std::to_string(file.codomain_size) + ")");
        }
    }
    return file;
}

}  // namespace pnfield
