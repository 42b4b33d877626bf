#include "grantgame/model.hpp"

#include <stdexcept>

namespace grantgame {

std::string to_string(Action action) {
    switch (action) {
        case Action::Stay: return "stay";
        case Action::NewTopic: return "new_topic";
        case Action::NewField: return "new_field";
    }
    throw std::invalid_argument("unknown Action value");
}

Action action_from_string(const std::string& name) {
    if (name == "stay") return Action::Stay;
    if (name == "new_topic") return Action::NewTopic;
    if (name == "new_field") return Action::NewField;
    throw std::invalid_argument("unknown action name: " + name);
}

ModelConfig::ModelConfig(double beta, DiscreteDistribution field_income,
                         DiscreteDistribution topic_income)
    : grid_{field_income.support(), topic_income.support()},
      beta_(beta),
      field_income_(std::move(field_income)),
      topic_income_(std::move(topic_income)) {
    validate();
}

ModelConfig::ModelConfig(GridSpec grid, double beta, DiscreteDistribution field_income,
                         DiscreteDistribution topic_income)
    : grid_(std::move(grid)),
      beta_(beta),
      field_income_(std::move(field_income)),
      topic_income_(std::move(topic_income)) {
    validate();
}

void ModelConfig::validate() const {
    if (!(beta_ >= 0.0) || !(beta_ < 1.0)) {
        throw std::invalid_argument("beta must lie in [0, 1)");
    }
    if (grid_.theta_values != field_income_.support()) {
        throw std::invalid_argument("theta grid must equal the support of F");
    }
    if (grid_.epsilon_values != topic_income_.support()) {
        throw std::invalid_argument("epsilon grid must equal the support of G");
    }
}

}  // namespace grantgame
