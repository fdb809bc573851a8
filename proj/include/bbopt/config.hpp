#ifndef BBOPT_CONFIG_HPP
#define BBOPT_CONFIG_HPP

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bbopt/accelerators.hpp"
#include "bbopt/asbec.hpp"
#include "bbopt/core.hpp"
#include "bbopt/gd.hpp"
#include "bbopt/gedea.hpp"
#include "bbopt/irw.hpp"
#include "bbopt/surrogate.hpp"

namespace bbopt {

/// Flat `key = value` sections. Lines starting with '#' or ';' are comments.
class IniConfig {
  public:
    static IniConfig parse(std::istream& is) {
        IniConfig cfg;
        std::string line, section;
        int line_no = 0;
        while (std::getline(is, line)) {
            ++line_no;
            std::string t = trim(line);
            if (t.empty() || t.front() == '#' || t.front() == ';') continue;
            if (t.front() == '[') {
                if (t.back() != ']')
                    throw ConfigError("config line " + std::to_string(line_no) +
                                      ": unterminated section header");
                section = trim(t.substr(1, t.size() - 2));
                cfg.sections_[section];
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(line_no) +
                                  ": expected key = value");
            const std::string key = trim(t.substr(0, eq));
            const std::string value = trim(t.substr(eq + 1));
            if (key.empty())
                throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
            cfg.sections_[section][key] = value;
        }
        return cfg;
    }

    static IniConfig parse_string(const std::string& text) {
        std::istringstream is(text);
        return parse(is);
    }

    static IniConfig from_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw ConfigError("cannot open config file: " + path);
        return parse(is);
    }

    bool has(const std::string& section, const std::string& key) const {
        const auto s = sections_.find(section);
        return s != sections_.end() && s->second.count(key) > 0;
    }

    void set(const std::string& section, const std::string& key, const std::string& value) {
        sections_[section][key] = value;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback = {}) const {
        const auto s = sections_.find(section);
        if (s == sections_.end()) return fallback;
        const auto k = s->second.find(key);
        return k == s->second.end() ? fallback : k->second;
    }

    double get_double(const std::string& section, const std::string& key, double fallback) const {
        if (!has(section, key)) return fallback;
        const std::string raw = get_string(section, key);
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(raw, &used);
        } catch (const std::exception&) {
            throw ConfigError("config [" + section + "] " + key + ": expected a number, got '" +
                              raw + "'");
        }
        if (used != raw.size())
            throw ConfigError("config [" + section + "] " + key + ": trailing junk in '" + raw + "'");
        return v;
    }

    long get_int(const std::string& section, const std::string& key, long fallback) const {
        if (!has(section, key)) return fallback;
        const std::string raw = get_string(section, key);
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(raw, &used);
        } catch (const std::exception&) {
            throw ConfigError("config [" + section + "] " + key + ": expected an integer, got '" +
                              raw + "'");
        }
        if (used != raw.size())
            throw ConfigError("config [" + section + "] " + key + ": trailing junk in '" + raw + "'");
        return v;
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) const {
        if (!has(section, key)) return fallback;
        const std::string raw = get_string(section, key);
        if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
        if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
        throw ConfigError("config [" + section + "] " + key + ": expected a boolean, got '" + raw +
                          "'");
    }

    std::vector<double> get_double_list(const std::string& section, const std::string& key) const {
        std::vector<double> out;
        if (!has(section, key)) return out;
        std::istringstream is(get_string(section, key));
        std::string item;
        while (std::getline(is, item, ',')) {
            const std::string t = trim(item);
            if (t.empty())
                throw ConfigError("config [" + section + "] " + key + ": empty list element");
            std::size_t used = 0;
            try {
                out.push_back(std::stod(t, &used));
            } catch (const std::exception&) {
                throw ConfigError("config [" + section + "] " + key + ": bad number '" + t + "'");
            }
            if (used != t.size())
                throw ConfigError("config [" + section + "] " + key + ": bad number '" + t + "'");
        }
        return out;
    }

  private:
    static std::string trim(const std::string& s) {
        const auto begin = s.find_first_not_of(" \t\r\n");
        if (begin == std::string::npos) return {};
        const auto end = s.find_last_not_of(" \t\r\n");
        return s.substr(begin, end - begin + 1);
    }

    std::map<std::string, std::map<std::string, std::string>> sections_;
};

inline GdConfig gd_from_config(const IniConfig& c) {
    GdConfig g;
    g.fd_step = c.get_double("gd", "fd_step", g.fd_step);
    g.line_search_grid = static_cast<int>(c.get_int("gd", "line_search_grid", g.line_search_grid));
    g.step_growth = c.get_double("gd", "step_growth", g.step_growth);
    g.min_step = c.get_double("gd", "min_step", g.min_step);
    g.refine_rounds = static_cast<int>(c.get_int("gd", "refine_rounds", g.refine_rounds));
    return g;
}

inline IrwConfig irw_from_config(const IniConfig& c) {
    IrwConfig i;
    i.step_sigma = c.get_double("irw", "step_sigma", i.step_sigma);
    i.parabola_clip = c.get_double("irw", "parabola_clip", i.parabola_clip);
    return i;
}

inline AsbecConfig asbec_from_config(const IniConfig& c) {
    AsbecConfig a;
    a.colony_size = static_cast<int>(c.get_int("asbec", "colony_size", a.colony_size));
    a.abandonment_limit =
        static_cast<int>(c.get_int("asbec", "abandonment_limit", a.abandonment_limit));
    a.step_sigma = c.get_double("asbec", "step_sigma", a.step_sigma);
    a.onlooker_count = static_cast<int>(c.get_int("asbec", "onlooker_count", a.onlooker_count));
    a.scout_candidates =
        static_cast<int>(c.get_int("asbec", "scout_candidates", a.scout_candidates));
    a.trend_beta = c.get_double("asbec", "trend_beta", a.trend_beta);
    a.nectar_capacity = static_cast<int>(c.get_int("asbec", "nectar_capacity", a.nectar_capacity));
    return a;
}

inline GedeaConfig gedea_from_config(const IniConfig& c) {
    GedeaConfig g;
    g.population_size = static_cast<int>(c.get_int("gedea", "population_size", g.population_size));
    g.generations = static_cast<int>(c.get_int("gedea", "generations", g.generations));
    g.crossover_rate = c.get_double("gedea", "crossover_rate", g.crossover_rate);
    g.mutation_rate = c.get_double("gedea", "mutation_rate", g.mutation_rate);
    g.mutation_sigma = c.get_double("gedea", "mutation_sigma", g.mutation_sigma);
    g.blend_alpha = c.get_double("gedea", "blend_alpha", g.blend_alpha);
    return g;
}

inline SurrogateConfig surrogate_from_config(const IniConfig& c) {
    SurrogateConfig s;
    s.samples_per_cycle =
        static_cast<int>(c.get_int("loh_ann", "samples_per_cycle", s.samples_per_cycle));
    s.hidden_width = static_cast<int>(c.get_int("loh_ann", "hidden_width", s.hidden_width));
    s.epochs = static_cast<int>(c.get_int("loh_ann", "epochs", s.epochs));
    s.learning_rate = c.get_double("loh_ann", "learning_rate", s.learning_rate);
    s.validation_fraction =
        c.get_double("loh_ann", "validation_fraction", s.validation_fraction);
    s.cycles = static_cast<int>(c.get_int("loh_ann", "cycles", s.cycles));
    s.shrink_factor = c.get_double("loh_ann", "shrink_factor", s.shrink_factor);
    s.predicted_pareto_evals =
        static_cast<int>(c.get_int("loh_ann", "predicted_pareto_evals", s.predicted_pareto_evals));
    s.loh_iters = static_cast<int>(c.get_int("loh_ann", "loh_iters", s.loh_iters));
    return s;
}

inline AcceleratorConfig accel_from_config(const IniConfig& c) {
    AcceleratorConfig a;
    a.history_capacity =
        static_cast<int>(c.get_int("accel", "history_capacity", a.history_capacity));
    a.injection_period =
        static_cast<int>(c.get_int("accel", "injection_period", a.injection_period));
    a.modification_probability =
        c.get_double("accel", "modification_probability", a.modification_probability);
    a.stagnation_window =
        static_cast<int>(c.get_int("accel", "stagnation_window", a.stagnation_window));
    a.resize_factor = c.get_double("accel", "resize_factor", a.resize_factor);
    return a;
}

}  // namespace bbopt

#endif
