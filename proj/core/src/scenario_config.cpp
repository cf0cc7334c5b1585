#include "microgrid/scenario_config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "microgrid/errors.hpp"
#include "microgrid/nasa_power.hpp"

namespace microgrid {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string kind_of(const json& j) {
    if (j.is_object()) return "object";
    if (j.is_array()) return "array";
    if (j.is_string()) return "string";
    if (j.is_boolean()) return "boolean";
    if (j.is_number()) return "number";
    return "null";
}

double as_number(const json& j, const std::string& field) {
    if (!j.is_number()) throw ConfigError(field, "expected a number, got " + kind_of(j));
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
    return v;
}

long long as_integer(const json& j, const std::string& field) {
    if (j.is_number_integer()) return j.get<long long>();
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (std::floor(v) == v && std::abs(v) < 9e15) return static_cast<long long>(v);
    }
    throw ConfigError(field, "expected an integer, got " + kind_of(j));
}

/// Object reader that remembers which keys were consumed so leftovers can be
/// reported as unknown.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object, got " + kind_of(j_));
    }

    const std::string& path() const { return path_; }
    std::string field(const std::string& key) const { return join(path_, key); }

    const json* find(const std::string& key) {
        auto it = j_.find(key);
        if (it == j_.end()) return nullptr;
        seen_.insert(key);
        return &*it;
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    void number(const std::string& key, double& out) {
        if (auto* v = find(key)) out = as_number(*v, field(key));
    }

    void number(const std::string& key, double& out, double lo, double hi) {
        if (auto* v = find(key)) {
            const double x = as_number(*v, field(key));
            if (x < lo || x > hi) {
                throw ConfigError(field(key), "must lie in [" + num(lo) + ", " + num(hi) + "], got " + num(x));
            }
            out = x;
        }
    }

    void positive(const std::string& key, double& out) {
        if (auto* v = find(key)) {
            const double x = as_number(*v, field(key));
            if (!(x > 0.0)) throw ConfigError(field(key), "must be positive, got " + num(x));
            out = x;
        }
    }

    void nonnegative(const std::string& key, double& out) {
        if (auto* v = find(key)) {
            const double x = as_number(*v, field(key));
            if (x < 0.0) throw ConfigError(field(key), "must be >= 0, got " + num(x));
            out = x;
        }
    }

    void count(const std::string& key, int& out) {
        if (auto* v = find(key)) {
            const long long x = as_integer(*v, field(key));
            if (x < 0) throw ConfigError(field(key), "must be >= 0, got " + std::to_string(x));
            if (x > std::numeric_limits<int>::max()) throw ConfigError(field(key), "is too large");
            out = static_cast<int>(x);
        }
    }

    void integer(const std::string& key, int& out, int lo, int hi) {
        if (auto* v = find(key)) {
            const long long x = as_integer(*v, field(key));
            if (x < lo || x > hi) {
                throw ConfigError(field(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                                  "], got " + std::to_string(x));
            }
            out = static_cast<int>(x);
        }
    }

    void boolean(const std::string& key, bool& out) {
        if (auto* v = find(key)) {
            if (!v->is_boolean()) throw ConfigError(field(key), "expected a boolean, got " + kind_of(*v));
            out = v->get<bool>();
        }
    }

    void string(const std::string& key, std::string& out) {
        if (auto* v = find(key)) {
            if (!v->is_string()) throw ConfigError(field(key), "expected a string, got " + kind_of(*v));
            out = v->get<std::string>();
        }
    }

    std::optional<Section> child(const std::string& key) {
        if (auto* v = find(key)) return Section(*v, field(key));
        return std::nullopt;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) throw ConfigError(field(it.key()), "unknown key");
        }
    }

private:
    static std::string num(double v) {
        std::ostringstream os;
        os << v;
        return os.str();
    }

    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

/// Runs a validate() call and re-raises its message against `field`.
template <typename F>
void checked(const std::string& field, F&& f) {
    try {
        f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(field, e.what());
    }
}

std::string resolve(const std::string& base_dir, const std::string& p, const std::string& field, bool must_exist) {
    if (p.empty()) throw ConfigError(field, "path is empty");
    fs::path path(p);
    if (path.is_relative()) path = fs::path(base_dir) / path;
    path = fs::absolute(path).lexically_normal();
    if (must_exist && !fs::exists(path)) throw ConfigError(field, "file not found: " + path.string());
    return path.string();
}

template <std::size_t N>
std::array<double, N> number_array(const json& j, const std::string& field) {
    if (!j.is_array()) throw ConfigError(field, "expected an array of " + std::to_string(N) + " numbers");
    if (j.size() != N) {
        throw ConfigError(field, "expected " + std::to_string(N) + " values, got " + std::to_string(j.size()));
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = as_number(j[i], field + "[" + std::to_string(i) + "]");
    return out;
}

MonthlyProfile read_monthly(Section& s, const std::string& key, Quantity q, const MonthlyProfile& fallback) {
    const json* v = s.find(key);
    if (!v) return fallback;
    MonthlyProfile p{q, number_array<12>(*v, s.field(key))};
    checked(s.field(key), [&] { p.validate(); });
    return p;
}

std::optional<double> read_optional_positive(Section& s, const std::string& key, std::optional<double> fallback) {
    const json* v = s.find(key);
    if (!v) return fallback;
    if (v->is_null()) return std::nullopt;
    const double x = as_number(*v, s.field(key));
    if (!(x > 0.0)) throw ConfigError(s.field(key), "must be positive");
    return x;
}

DailyShape read_shape(const json& j, const std::string& field) {
    const auto w = number_array<24>(j, field);
    double sum = 0.0;
    for (double x : w) {
        if (x < 0.0) throw ConfigError(field, "weights must be nonnegative");
        sum += x;
    }
    if (!(sum > 0.0)) throw ConfigError(field, "weights are all zero");
    // Already-normalized weights are kept verbatim so serialization round-trips.
    if (std::abs(sum - 1.0) <= 1e-12) return DailyShape(w);
    return DailyShape::from_unnormalized(w);
}

template <typename T, typename Conv>
std::vector<T> read_list(const json& j, const std::string& field, Conv conv) {
    if (!j.is_array()) throw ConfigError(field, "expected an array");
    std::vector<T> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(conv(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

PowerCurve read_power_curve(Section s, const std::string& base_dir) {
    int forms = s.has("cubic") + s.has("file") + s.has("points");
    if (forms != 1) throw ConfigError(s.path(), "give exactly one of 'cubic', 'file' or 'points'");
    if (auto c = s.child("cubic")) {
        double cut_in = 3.0, rated = 12.0, cut_out = 24.0, step = 0.5;
        c->nonnegative("cut_in_ms", cut_in);
        c->positive("rated_ms", rated);
        c->positive("cut_out_ms", cut_out);
        c->positive("step_ms", step);
        c->finish();
        std::optional<PowerCurve> out;
        checked(c->path(), [&] { out = PowerCurve::cubic(cut_in, rated, cut_out, step); });
        s.finish();
        return *out;
    }
    std::optional<PowerCurve> out;
    if (s.has("file")) {
        std::string file;
        s.string("file", file);
        const auto path = resolve(base_dir, file, s.field("file"), true);
        checked(s.field("file"), [&] { out = read_power_curve_csv(path); });
    } else {
        const json* pts = s.find("points");
        const auto field = s.field("points");
        auto points = read_list<PowerCurvePoint>(*pts, field, [](const json& p, const std::string& f) {
            const auto xy = number_array<2>(p, f);
            return PowerCurvePoint{xy[0], xy[1]};
        });
        checked(field, [&] { out = PowerCurve(std::move(points)); });
    }
    s.finish();
    return *out;
}

EmissionFactors read_emissions(Section s, const std::string& base_dir) {
    EmissionFactors f;
    if (s.has("file")) {
        std::string file;
        s.string("file", file);
        const auto path = resolve(base_dir, file, s.field("file"), true);
        checked(s.field("file"), [&] { f = read_emission_factors(path); });
    }
    auto species = [&](const std::string& key, SpeciesVector& out) {
        if (auto c = s.child(key)) {
            for (Species sp : kAllSpecies) c->nonnegative(std::string(to_string(sp)), out[static_cast<int>(sp)]);
            c->finish();
        }
    };
    species("genset", f.genset_kg_per_l);
    species("grid", f.grid_kg_per_kwh);
    s.finish();
    checked(s.path(), [&] { f.validate(); });
    return f;
}

void read_components(Section s, ScenarioConfig& c, const std::string& base_dir) {
    auto& sys = c.system;
    auto& pr = c.prices;
    if (auto pv = s.child("pv")) {
        pv->positive("unit_rating_kw", sys.pv.unit_rating_kw);
        pv->number("derating", sys.pv.derating, 0.0, 1.0);
        pv->number("temp_coeff", sys.pv.temp_coeff, -1.0, 1.0);
        pv->number("noct_c", sys.pv.noct_c);
        pv->number("t_stc_c", sys.pv.t_stc_c);
        pv->positive("g_stc_kw_m2", sys.pv.g_stc_kw_m2);
        if (auto p = pv->child("prices")) {
            p->nonnegative("capital_per_kw", pr.pv.capital_per_kw);
            p->nonnegative("replacement_per_kw", pr.pv.replacement_per_kw);
            p->nonnegative("om_per_kw_year", pr.pv.om_per_kw_year);
            p->positive("lifetime_years", pr.pv.lifetime_years);
            p->finish();
        }
        pv->finish();
        checked(pv->path(), [&] { sys.pv.validate(); });
    }
    if (auto w = s.child("wind")) {
        w->positive("unit_rating_kw", sys.wind.unit_rating_kw);
        w->positive("hub_height_m", sys.wind.hub_height_m);
        w->positive("anemometer_height_m", sys.wind.anemometer_height_m);
        w->number("shear_exponent", sys.wind.shear_exponent, 0.0, 1.0);
        w->positive("air_density_kg_m3", sys.wind.air_density_kg_m3);
        w->positive("reference_density_kg_m3", sys.wind.reference_density_kg_m3);
        if (auto pc = w->child("power_curve")) sys.wind.curve = read_power_curve(std::move(*pc), base_dir);
        if (auto p = w->child("prices")) {
            p->nonnegative("capital_per_unit", pr.wind.capital_per_unit);
            p->nonnegative("replacement_per_unit", pr.wind.replacement_per_unit);
            p->nonnegative("om_per_unit_year", pr.wind.om_per_unit_year);
            p->positive("lifetime_years", pr.wind.lifetime_years);
            p->finish();
        }
        w->finish();
        checked(w->path(), [&] { sys.wind.validate(); });
    }
    if (auto b = s.child("battery")) {
        b->positive("unit_capacity_kwh", sys.battery.unit_capacity_kwh);
        b->positive("nominal_voltage_v", sys.battery.nominal_voltage_v);
        b->number("roundtrip_efficiency", sys.battery.roundtrip_efficiency, 0.0, 1.0);
        b->number("soc_min", sys.battery.soc_min, 0.0, 1.0);
        b->number("soc_max", sys.battery.soc_max, 0.0, 1.0);
        b->number("self_discharge_per_hour", sys.battery.self_discharge_per_hour, 0.0, 1.0);
        b->nonnegative("max_charge_kw_per_unit", sys.battery.max_charge_kw_per_unit);
        b->nonnegative("max_discharge_kw_per_unit", sys.battery.max_discharge_kw_per_unit);
        if (auto p = b->child("prices")) {
            p->nonnegative("capital_per_unit", pr.battery.capital_per_unit);
            p->nonnegative("replacement_per_unit", pr.battery.replacement_per_unit);
            p->nonnegative("om_per_unit_year", pr.battery.om_per_unit_year);
            p->positive("lifetime_years", pr.battery.lifetime_years);
            p->finish();
        }
        b->finish();
        checked(b->path(), [&] { sys.battery.validate(); });
    }
    if (auto g = s.child("genset")) {
        g->number("min_load_ratio", sys.genset.min_load_ratio, 0.0, 1.0);
        g->nonnegative("fuel_intercept_l_per_h_per_kw", sys.genset.fuel_intercept_l_per_h_per_kw);
        g->nonnegative("fuel_slope_l_per_kwh", sys.genset.fuel_slope_l_per_kwh);
        g->positive("lifetime_hours", sys.genset.lifetime_hours);
        if (auto p = g->child("prices")) {
            p->nonnegative("capital_per_kw", pr.genset.capital_per_kw);
            p->nonnegative("replacement_per_kw", pr.genset.replacement_per_kw);
            p->nonnegative("om_per_op_hour", pr.genset.om_per_op_hour);
            p->boolean("om_per_rated_kw", pr.genset.om_per_rated_kw);
            p->nonnegative("fuel_per_l", pr.genset.fuel_per_l);
            p->finish();
        }
        g->finish();
    }
    if (auto cv = s.child("converter")) {
        cv->number("efficiency", sys.converter.efficiency, 0.0, 1.0);
        if (auto p = cv->child("prices")) {
            p->nonnegative("capital_per_kw", pr.converter.capital_per_kw);
            p->nonnegative("replacement_per_kw", pr.converter.replacement_per_kw);
            p->nonnegative("om_per_kw_year", pr.converter.om_per_kw_year);
            p->positive("lifetime_years", pr.converter.lifetime_years);
            p->finish();
        }
        cv->finish();
    }
    s.finish();
}

void read_resources(Section s, ResourceConfig& r, const std::string& base_dir) {
    if (auto* v = s.find("source")) {
        const std::string name = v->is_string() ? v->get<std::string>() : "";
        if (name == "synth") r.source = ResourceSource::synth;
        else if (name == "csv") r.source = ResourceSource::csv;
        else if (name == "nasa") r.source = ResourceSource::nasa;
        else throw ConfigError(s.field("source"), "expected one of synth, csv, nasa");
    }
    r.ghi_monthly = read_monthly(s, "ghi_monthly", Quantity::ghi_kw_m2, r.ghi_monthly);
    r.wind_monthly = read_monthly(s, "wind_monthly", Quantity::wind_ms, r.wind_monthly);
    r.temp_monthly = read_monthly(s, "temp_monthly", Quantity::temp_c, r.temp_monthly);
    r.ghi_annual_mean = read_optional_positive(s, "ghi_annual_mean", r.ghi_annual_mean);
    r.wind_annual_mean = read_optional_positive(s, "wind_annual_mean", r.wind_annual_mean);
    s.number("ghi_variability", r.ghi_variability, 0.0, 0.999);
    s.number("wind_variability", r.wind_variability, 0.0, 0.999);
    s.number("temp_variability", r.temp_variability, 0.0, 0.999);
    if (auto d = s.child("daylight")) {
        d->integer("start_hour", r.daylight.start_hour, 0, 23);
        d->integer("end_hour", r.daylight.end_hour, 1, 24);
        d->finish();
        if (r.daylight.end_hour <= r.daylight.start_hour) {
            throw ConfigError(d->field("end_hour"), "must be after start_hour");
        }
    }
    if (auto c = s.child("csv")) {
        c->string("ghi", r.ghi_csv);
        c->string("wind", r.wind_csv);
        c->string("temp", r.temp_csv);
        c->finish();
    }
    s.finish();
    const bool need = r.source == ResourceSource::csv;
    auto fix = [&](std::string& p, const char* key) {
        const auto field = join(join(s.path(), "csv"), key);
        if (p.empty()) {
            if (need) throw ConfigError(field, "required when source is csv");
            return;
        }
        p = resolve(base_dir, p, field, need);
    };
    fix(r.ghi_csv, "ghi");
    fix(r.wind_csv, "wind");
    fix(r.temp_csv, "temp");
}

void read_load(Section s, LoadConfig& l, const std::string& base_dir) {
    if (auto* v = s.find("source")) {
        const std::string name = v->is_string() ? v->get<std::string>() : "";
        if (name == "synth") l.source = LoadSource::synth;
        else if (name == "csv") l.source = LoadSource::csv;
        else throw ConfigError(s.field("source"), "expected one of synth, csv");
    }
    s.positive("avg_daily_kwh", l.avg_daily_kwh);
    s.positive("peak_kw", l.peak_kw);
    if (auto* v = s.find("shape")) l.shape = read_shape(*v, s.field("shape"));
    s.number("day_variability", l.day_variability, 0.0, 0.999);
    s.string("csv", l.csv);
    s.finish();
    if (l.peak_kw * 24.0 < l.avg_daily_kwh) {
        throw ConfigError(s.field("peak_kw"), "peak must be at least the average hourly load");
    }
    if (l.source == LoadSource::csv && l.csv.empty()) throw ConfigError(s.field("csv"), "required when source is csv");
    if (!l.csv.empty()) l.csv = resolve(base_dir, l.csv, s.field("csv"), l.source == LoadSource::csv);
}

template <typename T>
void shape_check(const std::vector<T>& v, const std::string& field) {
    if (v.empty()) throw ConfigError(field, "must not be empty");
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i - 1] < v[i])) throw ConfigError(field, "must be strictly increasing");
    }
}

SearchSpace read_search(Section s) {
    SearchSpace sp;
    auto ints = [&](const char* key, std::vector<int>& out) {
        if (auto* v = s.find(key)) {
            out = read_list<int>(*v, s.field(key), [](const json& x, const std::string& f) {
                const long long n = as_integer(x, f);
                if (n < 0) throw ConfigError(f, "must be >= 0");
                return static_cast<int>(n);
            });
            shape_check(out, s.field(key));
        }
    };
    auto dbls = [&](const char* key, std::vector<double>& out) {
        if (auto* v = s.find(key)) {
            out = read_list<double>(*v, s.field(key), [](const json& x, const std::string& f) {
                const double n = as_number(x, f);
                if (n < 0) throw ConfigError(f, "must be >= 0");
                return n;
            });
            shape_check(out, s.field(key));
        }
    };
    ints("n_pv", sp.n_pv);
    ints("n_wt", sp.n_wt);
    ints("n_batt", sp.n_batt);
    dbls("genset_kw", sp.genset_kw);
    dbls("converter_kw", sp.converter_kw);
    s.finish();
    checked(s.path(), [&] { sp.validate(); });
    return sp;
}

json species_json(const SpeciesVector& v) {
    json j = json::object();
    for (Species sp : kAllSpecies) j[std::string(to_string(sp))] = v[static_cast<int>(sp)];
    return j;
}

json monthly_json(const MonthlyProfile& p) { return json(p.values); }

}  // namespace

ScenarioConfig parse_scenario(const std::string& text, const std::string& base_dir) {
    json root;
    try {
        root = json::parse(text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }

    ScenarioConfig c;
    Section s(root, "");
    s.string("name", c.name);
    if (auto* v = s.find("seed")) {
        if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
            throw ConfigError("seed", "expected a nonnegative integer");
        }
        c.seed = v->get<std::uint64_t>();
    }
    s.string("output_dir", c.output_dir);
    if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");

    if (auto site = s.child("site")) {
        site->number("latitude", c.site.latitude, -90.0, 90.0);
        site->number("longitude", c.site.longitude, -180.0, 180.0);
        site->finish();
    }
    if (auto f = s.child("finance")) {
        f->number("nominal_rate", c.finance.nominal_rate, 0.0, 1.0);
        f->number("inflation", c.finance.inflation, -0.5, 1.0);
        f->integer("project_life_years", c.finance.project_life_years, 1, 100);
        f->finish();
        checked(f->path(), [&] { c.finance.validate(); });
    }
    if (auto* v = s.find("strategy")) {
        const std::string name = v->is_string() ? v->get<std::string>() : "";
        if (name == "lf") c.system.strategy = Strategy::load_following;
        else if (name == "cc") c.system.strategy = Strategy::cycle_charging;
        else throw ConfigError("strategy", "expected lf or cc");
    }
    if (auto f = s.child("fleet")) {
        f->count("n_pv", c.system.fleet.n_pv);
        f->count("n_wt", c.system.fleet.n_wt);
        f->count("n_batt", c.system.fleet.n_batt);
        f->nonnegative("genset_kw", c.system.fleet.genset_kw);
        f->nonnegative("converter_kw", c.system.fleet.converter_kw);
        f->finish();
    }
    if (auto* v = s.find("initial_soc")) {
        if (!v->is_null()) {
            const double x = as_number(*v, "initial_soc");
            if (x < c.system.battery.soc_min - 1e-12 || x > 1.0) {
                throw ConfigError("initial_soc", "must lie within the battery SOC window");
            }
            c.initial_soc = x;
        }
    }
    if (auto comp = s.child("components")) read_components(std::move(*comp), c, base_dir);
    if (c.initial_soc && (*c.initial_soc < c.system.battery.soc_min || *c.initial_soc > c.system.battery.soc_max)) {
        throw ConfigError("initial_soc", "must lie within the battery SOC window");
    }
    if (auto g = s.child("grid")) {
        g->nonnegative("tariff", c.grid_tariff);
        g->finish();
    }
    if (auto e = s.child("emissions")) c.emissions = read_emissions(std::move(*e), base_dir);
    if (auto r = s.child("resources")) read_resources(std::move(*r), c.resources, base_dir);
    if (auto l = s.child("load")) read_load(std::move(*l), c.load, base_dir);
    if (auto k = s.child("constraints")) {
        k->number("max_unmet_fraction", c.constraints.max_unmet_fraction, 0.0, 1.0);
        k->number("min_renewable_fraction", c.constraints.min_renewable_fraction, 0.0, 1.0);
        k->finish();
    }
    if (auto sp = s.child("search")) c.search = read_search(std::move(*sp));
    s.finish();

    checked("prices", [&] { c.prices.validate(); });
    checked("fleet", [&] { c.system.validate(); });
    return c;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto dir = fs::absolute(fs::path(path)).parent_path().string();
    return parse_scenario(buf.str(), dir);
}

std::string serialize_scenario(const ScenarioConfig& c) {
    json j;
    j["name"] = c.name;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    j["site"] = {{"latitude", c.site.latitude}, {"longitude", c.site.longitude}};
    j["finance"] = {{"nominal_rate", c.finance.nominal_rate},
                    {"inflation", c.finance.inflation},
                    {"project_life_years", c.finance.project_life_years}};
    j["strategy"] = c.system.strategy == Strategy::load_following ? "lf" : "cc";
    const auto& f = c.system.fleet;
    j["fleet"] = {{"n_pv", f.n_pv},
                  {"n_wt", f.n_wt},
                  {"n_batt", f.n_batt},
                  {"genset_kw", f.genset_kw},
                  {"converter_kw", f.converter_kw}};
    j["initial_soc"] = c.initial_soc ? json(*c.initial_soc) : json(nullptr);

    const auto& sys = c.system;
    const auto& pr = c.prices;
    json curve = json::array();
    for (const auto& p : sys.wind.curve.points()) curve.push_back({p.speed_ms, p.fraction});
    j["components"] = {
        {"pv",
         {{"unit_rating_kw", sys.pv.unit_rating_kw},
          {"derating", sys.pv.derating},
          {"temp_coeff", sys.pv.temp_coeff},
          {"noct_c", sys.pv.noct_c},
          {"t_stc_c", sys.pv.t_stc_c},
          {"g_stc_kw_m2", sys.pv.g_stc_kw_m2},
          {"prices",
           {{"capital_per_kw", pr.pv.capital_per_kw},
            {"replacement_per_kw", pr.pv.replacement_per_kw},
            {"om_per_kw_year", pr.pv.om_per_kw_year},
            {"lifetime_years", pr.pv.lifetime_years}}}}},
        {"wind",
         {{"unit_rating_kw", sys.wind.unit_rating_kw},
          {"hub_height_m", sys.wind.hub_height_m},
          {"anemometer_height_m", sys.wind.anemometer_height_m},
          {"shear_exponent", sys.wind.shear_exponent},
          {"air_density_kg_m3", sys.wind.air_density_kg_m3},
          {"reference_density_kg_m3", sys.wind.reference_density_kg_m3},
          {"power_curve", {{"points", curve}}},
          {"prices",
           {{"capital_per_unit", pr.wind.capital_per_unit},
            {"replacement_per_unit", pr.wind.replacement_per_unit},
            {"om_per_unit_year", pr.wind.om_per_unit_year},
            {"lifetime_years", pr.wind.lifetime_years}}}}},
        {"battery",
         {{"unit_capacity_kwh", sys.battery.unit_capacity_kwh},
          {"nominal_voltage_v", sys.battery.nominal_voltage_v},
          {"roundtrip_efficiency", sys.battery.roundtrip_efficiency},
          {"soc_min", sys.battery.soc_min},
          {"soc_max", sys.battery.soc_max},
          {"self_discharge_per_hour", sys.battery.self_discharge_per_hour},
          {"max_charge_kw_per_unit", sys.battery.max_charge_kw_per_unit},
          {"max_discharge_kw_per_unit", sys.battery.max_discharge_kw_per_unit},
          {"prices",
           {{"capital_per_unit", pr.battery.capital_per_unit},
            {"replacement_per_unit", pr.battery.replacement_per_unit},
            {"om_per_unit_year", pr.battery.om_per_unit_year},
            {"lifetime_years", pr.battery.lifetime_years}}}}},
        {"genset",
         {{"min_load_ratio", sys.genset.min_load_ratio},
          {"fuel_intercept_l_per_h_per_kw", sys.genset.fuel_intercept_l_per_h_per_kw},
          {"fuel_slope_l_per_kwh", sys.genset.fuel_slope_l_per_kwh},
          {"lifetime_hours", sys.genset.lifetime_hours},
          {"prices",
           {{"capital_per_kw", pr.genset.capital_per_kw},
            {"replacement_per_kw", pr.genset.replacement_per_kw},
            {"om_per_op_hour", pr.genset.om_per_op_hour},
            {"om_per_rated_kw", pr.genset.om_per_rated_kw},
            {"fuel_per_l", pr.genset.fuel_per_l}}}}},
        {"converter",
         {{"efficiency", sys.converter.efficiency},
          {"prices",
           {{"capital_per_kw", pr.converter.capital_per_kw},
            {"replacement_per_kw", pr.converter.replacement_per_kw},
            {"om_per_kw_year", pr.converter.om_per_kw_year},
            {"lifetime_years", pr.converter.lifetime_years}}}}}};

    j["grid"] = {{"tariff", c.grid_tariff}};
    j["emissions"] = {{"genset", species_json(c.emissions.genset_kg_per_l)},
                      {"grid", species_json(c.emissions.grid_kg_per_kwh)}};

    const auto& r = c.resources;
    const char* src = r.source == ResourceSource::synth ? "synth" : r.source == ResourceSource::csv ? "csv" : "nasa";
    json res = {{"source", src},
                {"ghi_monthly", monthly_json(r.ghi_monthly)},
                {"wind_monthly", monthly_json(r.wind_monthly)},
                {"temp_monthly", monthly_json(r.temp_monthly)},
                {"ghi_annual_mean", r.ghi_annual_mean ? json(*r.ghi_annual_mean) : json(nullptr)},
                {"wind_annual_mean", r.wind_annual_mean ? json(*r.wind_annual_mean) : json(nullptr)},
                {"ghi_variability", r.ghi_variability},
                {"wind_variability", r.wind_variability},
                {"temp_variability", r.temp_variability},
                {"daylight", {{"start_hour", r.daylight.start_hour}, {"end_hour", r.daylight.end_hour}}}};
    json csv = json::object();
    if (!r.ghi_csv.empty()) csv["ghi"] = r.ghi_csv;
    if (!r.wind_csv.empty()) csv["wind"] = r.wind_csv;
    if (!r.temp_csv.empty()) csv["temp"] = r.temp_csv;
    if (!csv.empty()) res["csv"] = csv;
    j["resources"] = res;

    const auto& l = c.load;
    json load = {{"source", l.source == LoadSource::synth ? "synth" : "csv"},
                 {"avg_daily_kwh", l.avg_daily_kwh},
                 {"peak_kw", l.peak_kw},
                 {"shape", l.shape.weights()},
                 {"day_variability", l.day_variability}};
    if (!l.csv.empty()) load["csv"] = l.csv;
    j["load"] = load;

    j["constraints"] = {{"max_unmet_fraction", c.constraints.max_unmet_fraction},
                        {"min_renewable_fraction", c.constraints.min_renewable_fraction}};
    if (c.search) {
        j["search"] = {{"n_pv", c.search->n_pv},
                       {"n_wt", c.search->n_wt},
                       {"n_batt", c.search->n_batt},
                       {"genset_kw", c.search->genset_kw},
                       {"converter_kw", c.search->converter_kw}};
    }
    return j.dump(2) + "\n";
}

ScenarioData prepare_data(const ScenarioConfig& c, bool allow_network) {
    const auto& r = c.resources;
    std::optional<ResourceSeries> res;
    if (r.source == ResourceSource::csv) {
        res = ResourceSeries{read_hourly_csv(r.ghi_csv, Quantity::ghi_kw_m2),
                             read_hourly_csv(r.wind_csv, Quantity::wind_ms),
                             read_hourly_csv(r.temp_csv, Quantity::temp_c)};
    } else {
        MonthlyProfile ghi = r.ghi_monthly, wind = r.wind_monthly, temp = r.temp_monthly;
        if (r.source == ResourceSource::nasa) {
            const auto climate = nasa::fetch_monthly(c.site.latitude, c.site.longitude, allow_network);
            ghi = climate.ghi;
            wind = climate.wind;
            temp = climate.temperature;
        }
        if (r.ghi_annual_mean) ghi = ghi.scaled_to_annual_mean(*r.ghi_annual_mean);
        if (r.wind_annual_mean) wind = wind.scaled_to_annual_mean(*r.wind_annual_mean);
        // Each series draws from its own stream so changing one variability leaves the others intact.
        res = ResourceSeries{
            synthesize_from_monthly(ghi, shapes::solar_bell(r.daylight), {r.ghi_variability, c.seed, r.daylight}),
            synthesize_from_monthly(wind, shapes::flat(), {r.wind_variability, c.seed + 1, r.daylight}),
            synthesize_from_monthly(temp, shapes::flat(), {r.temp_variability, c.seed + 2, r.daylight})};
    }

    const auto& l = c.load;
    TimeSeries load = l.source == LoadSource::csv
                          ? read_hourly_csv(l.csv, Quantity::load_kw)
                          : synthesize_load(l.avg_daily_kwh, l.peak_kw, l.shape, c.seed + 3, l.day_variability);
    return ScenarioData{std::move(*res), std::move(load)};
}

EvaluationInputs evaluation_inputs(const ScenarioConfig& c, const ScenarioData& data) {
    return EvaluationInputs{c.system, data.resources, data.load, c.prices, c.finance, c.initial_soc};
}

}  // namespace microgrid
