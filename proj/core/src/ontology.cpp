#include "morlgp/ontology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "morlgp/errors.hpp"

namespace morlgp {

DomainStats DomainOntology::stats() const {
    return {static_cast<int>(slots.size()), static_cast<int>(requestables.size()),
            static_cast<int>(entities.size())};
}

int DomainOntology::slot_index(const std::string& slot) const {
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (slots[i].name == slot) return static_cast<int>(i);
    return -1;
}

int DomainOntology::value_index(int slot, const std::string& value) const {
    if (slot < 0 || slot >= static_cast<int>(slots.size())) return -1;
    const auto& vals = slots[static_cast<std::size_t>(slot)].values;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i] == value) return static_cast<int>(i);
    return -1;
}

void DomainOntology::validate() const {
    if (name.empty()) throw ValidationError("ontology: missing field 'name'");
    if (slots.empty()) throw ValidationError("ontology: field 'slots' is empty");
    if (requestables.empty()) throw ValidationError("ontology: field 'requestables' is empty");
    if (entities.empty()) throw ValidationError("ontology: field 'entities' is empty");
    for (const auto& s : slots) {
        if (s.values.empty())
            throw ValidationError("ontology: slot '" + s.name + "' has no values");
        for (const auto& v : s.values)
            if (v == "none" || v == "dontcare")
                throw ValidationError("ontology: slot '" + s.name +
                                      "' uses reserved value '" + v + "'");
    }
    for (std::size_t e = 0; e < entities.size(); ++e) {
        const auto& ent = entities[e];
        for (const auto& s : slots) {
            auto it = ent.constraints.find(s.name);
            if (it == ent.constraints.end())
                throw ValidationError("ontology: entity " + std::to_string(e) +
                                      " missing slot '" + s.name + "'");
            if (std::find(s.values.begin(), s.values.end(), it->second) == s.values.end())
                throw ValidationError("ontology: entity " + std::to_string(e) +
                                      " has unknown value '" + it->second + "' for slot '" +
                                      s.name + "'");
        }
        for (const auto& r : requestables)
            if (!ent.requestables.count(r))
                throw ValidationError("ontology: entity " + std::to_string(e) +
                                      " missing requestable '" + r + "'");
    }
}

DomainOntology parse_ontology(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("ontology: not valid JSON: ") + e.what());
    }
    DomainOntology o;
    try {
        o.name = j.at("name").get<std::string>();
        for (const auto& js : j.at("slots")) {
            Slot s;
            s.name = js.at("name").get<std::string>();
            s.values = js.at("values").get<std::vector<std::string>>();
            o.slots.push_back(std::move(s));
        }
        o.requestables = j.at("requestables").get<std::vector<std::string>>();
        for (const auto& je : j.at("entities")) {
            Entity ent;
            for (const auto& s : o.slots) {
                if (je.contains(s.name))
                    ent.constraints[s.name] = je.at(s.name).get<std::string>();
            }
            for (const auto& r : o.requestables) {
                if (je.contains(r)) ent.requestables[r] = je.at(r).get<std::string>();
            }
            o.entities.push_back(std::move(ent));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("ontology: schema violation: ") + e.what());
    }
    o.validate();
    return o;
}

DomainOntology load_ontology(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("ontology: cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_ontology(buf.str());
}

std::string ontology_to_json(const DomainOntology& o) {
    nlohmann::json j;
    j["name"] = o.name;
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : o.slots)
        slots.push_back({{"name", s.name}, {"values", s.values}});
    j["slots"] = std::move(slots);
    j["requestables"] = o.requestables;
    nlohmann::json ents = nlohmann::json::array();
    for (const auto& e : o.entities) {
        nlohmann::json je;
        for (const auto& [k, v] : e.constraints) je[k] = v;
        for (const auto& [k, v] : e.requestables) je[k] = v;
        ents.push_back(std::move(je));
    }
    j["entities"] = std::move(ents);
    return j.dump(2);
}

void save_ontology(const DomainOntology& o, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ValidationError("ontology: cannot open file for writing: " + path);
    out << ontology_to_json(o) << "\n";
}

DomainOntology generate_ontology(const std::string& name, int n_constraints,
                                 int n_values_per_slot, int n_requests,
                                 int n_entities, Rng& rng) {
    if (n_constraints < 1 || n_values_per_slot < 2 || n_requests < 1 || n_entities < 1)
        throw ValidationError("generate_ontology: counts must be positive (>=2 values per slot)");
    DomainOntology o;
    o.name = name;
    for (int s = 0; s < n_constraints; ++s) {
        Slot slot;
        slot.name = "slot" + std::to_string(s);
        for (int v = 0; v < n_values_per_slot; ++v)
            slot.values.push_back("s" + std::to_string(s) + "v" + std::to_string(v));
        o.slots.push_back(std::move(slot));
    }
    for (int r = 0; r < n_requests; ++r)
        o.requestables.push_back("req" + std::to_string(r));
    for (int e = 0; e < n_entities; ++e) {
        Entity ent;
        for (const auto& s : o.slots)
            ent.constraints[s.name] =
                s.values[static_cast<std::size_t>(rng.uniform_int(n_values_per_slot))];
        for (const auto& r : o.requestables)
            ent.requestables[r] = r + "_of_e" + std::to_string(e);
        o.entities.push_back(std::move(ent));
    }
    o.validate();
    return o;
}

std::vector<int> db_lookup(const DomainOntology& o,
                           const std::map<std::string, std::string>& constraints) {
    for (const auto& [slot, value] : constraints) {
        (void)value;
        if (o.slot_index(slot) < 0)
            throw ValidationError("db_lookup: unknown slot '" + slot + "'");
    }
    std::vector<int> matches;
    for (std::size_t e = 0; e < o.entities.size(); ++e) {
        bool ok = true;
        for (const auto& [slot, value] : constraints) {
            auto it = o.entities[e].constraints.find(slot);
            if (it == o.entities[e].constraints.end() || it->second != value) {
                ok = false;
                break;
            }
        }
        if (ok) matches.push_back(static_cast<int>(e));
    }
    return matches;
}

} // namespace morlgp
