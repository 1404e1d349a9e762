#include "rxnlab/templates.hpp"

#include "templates_internal.hpp"

namespace rxnlab::detail {

namespace {

constexpr const char* kConvert =
    "You are a chemist. Please follow the instructions to convert the structure to the "
    "corresponding name.";

std::string reaction_system(std::string_view what) {
  return "You are a chemist. Now, you are given a reaction equation. Your task is to predict the "
         "SMILES representation of the " +
         std::string(what) + ", given molecule representation of the reaction.";
}

std::string reaction_instruction(std::string_view tail) {
  return "Based on the given chemical reaction: <reactants> >> <products>, " + std::string(tail);
}

std::string selection_system(std::string_view given, std::string_view target) {
  return "You are an expert chemist. Given " + std::string(given) +
         " of a Suzuki reaction, predict the optimal " + std::string(target) +
         " that maximizes the yield with the rest of the reaction components. Only return the "
         "option from the given list.";
}

}  // namespace

std::vector<TaskTemplate> builtin_templates() {
  std::vector<TaskTemplate> t;
  t.push_back({"caption",
               "You are a chemist. Now you are given a representation of a molecule. Please help me "
               "to understand the molecule.",
               "Provide a brief overview of this molecule: <molecule>.",
               "Sure! Here is a description of this molecule. <caption>.",
               {"molecule"}});
  t.push_back({"iupac_to_formula", kConvert,
               "<input> is the IUPAC name of a molecule. Please give its molecular formula.",
               "The molecular formula is <output>.", {}});
  t.push_back({"iupac_to_smiles", kConvert,
               "Convert the IUPAC name of a molecule <input> into SMILES representation.",
               "The SMILES representation is <output>.", {}});
  t.push_back({"graph_to_formula", kConvert,
               "<input> is the representation of a molecule. What is its molecular formula?",
               "The molecular formula is <output>.", {"input"}});
  t.push_back({"graph_to_iupac", kConvert,
               "<input> is the representation of a molecule. What is its IUPAC name?",
               "The IUPAC name is <output>.", {"input"}});
  t.push_back({"graph_to_smiles", kConvert,
               "The representation of a certain molecule is <input>. Can you provide its SMILES "
               "representation?",
               "The SMILES representation is <output>.", {"input"}});
  t.push_back({"forward",
               "You are a chemist. Your task is to predict the SMILES representation of the product "
               "molecule, given the molecule representations of the reactants.",
               "Using <reactants> as the reactants and reagents, tell me the potential product.",
               "Sure. A potential product: <products>.", {"reactants"}});
  t.push_back({"retro",
               "You are a chemist. Your task is to predict the SMILES representation of the reactant "
               "molecules, given the molecule representations of the product.",
               "Using <products> as the products, predict the possible reactants that could have been "
               "utilized to synthesize these products.",
               "Here are possible reactants: <reactants>.", {"products"}});
  t.push_back({"catalyst", reaction_system("catalyst"),
               reaction_instruction("propose some likely catalysts that might have been utilized."),
               "A possible catalyst can be <catalyst>.", {"reactants", "products"}});
  t.push_back({"reagent", reaction_system("reagents"),
               reaction_instruction("propose some likely reagents that might have been utilized."),
               "A possible reagent can be <reagent>.", {"reactants", "products"}});
  t.push_back({"solvent", reaction_system("solvents"),
               reaction_instruction("propose some likely solvents that might have been utilized."),
               "A possible solvent can be <solvent>.", {"reactants", "products"}});
  t.push_back({"reagent_selection",
               selection_system("one reactant, two reagents, and one solvent", "reactant"),
               "Given the rest of the reaction components: <reactant> > <reagents> >> <solvent>.\n"
               "Select the optimal reactant: <candidates>",
               "Optimal reactant: <answer>.", {"reactant", "reagents", "solvent", "candidates"}});
  t.push_back({"ligand_selection",
               selection_system("two reactants, one reagent, and one solvent", "ligand"),
               "Given the rest of the reaction components: <reactants> >> <reagent>.<solvent>.\n"
               "Select the optimal ligand: <candidates>",
               "Optimal ligand: <answer>.", {"reactants", "reagent", "solvent", "candidates"}});
  t.push_back({"solvent_selection",
               selection_system("two reactants, one ligand, and one base", "solvent"),
               "Given the rest of the reaction components: <reactants> >> <ligand>.<base>.\n"
               "Select the optimal solvent: <candidates>",
               "Optimal solvent: <answer>.", {"reactants", "ligand", "base", "candidates"}});
  t.push_back({"yield",
               "You are a chemist. Now, you are given a reaction equation. Your task is to predict the "
               "yield ratio of the reaction. The return value should be in the range of 0-1. The "
               "higher the value, the more likely the reaction is to occur.",
               reaction_instruction("what is the yield ratio of the reaction?"),
               "The yield ratio is <ratio>.", {"reactants", "products"}});
  t.push_back({"reaction_class",
               "You are a chemist. Now, you are given a reaction equation. Your task is to predict the "
               "class of the reaction. Your task is to predict the class number of the reaction.",
               reaction_instruction("predict the class number of the reaction."),
               "The class number is <class_number>.", {"reactants", "products"}});
  return t;
}

}  // namespace rxnlab::detail
