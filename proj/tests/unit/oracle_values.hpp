#pragma once

// Values produced by the scripts in tests/oracles; regenerate by rerunning them.

#include <array>

namespace oracle {

// bracket_roots.py: roots of y - ln y - 1 = e0.
struct BracketRow {
  double e0, alpha1, alpha2;
};
inline constexpr std::array<BracketRow, 3> brackets{{
    {0.1, 0.61681683179170516524, 1.5162211614250221353},
    {0.5, 0.30170956268433601153, 2.3576766739458990584},
    {1.0, 0.15859433956303936215, 3.1461932206205825852},
}};

// initial_bump.py: min theta0 on L = 16, N = 512.
inline constexpr double min_theta0_amp_m05_w1_c0 = 0.50048804290901217;
inline constexpr double min_theta0_amp_m05_w15_c2 = 0.50021696680067373;

// quadrature.py
inline constexpr double quad_lyapunov_energy = 1.1459864851503014;
inline constexpr double quad_dissipation_rate = 0.33339339659461886;
inline constexpr double quad_weighted_diss = 0.0015340110353465638;

// mms_sources.py: L = 4, A = 0.1, phase +1, eps = 0.7, beta = 1.5, nu = 1.3,
// R = 0.8, c_v = 1.7, kappa_tilde = 0.9.
struct MmsRow {
  double x, t, s_v, s_u, s_theta, s_phi;
};
inline constexpr std::array<MmsRow, 20> mms_sources{{
    {0.8626800667615457, 0.38545435420269175, -0.084255771763762727, -0.05223627524235034, -0.00056800020035499348, -0.30072176839074899},
    {-1.9292081112397215, 0.07492010804110177, 0.088588881399114541, 0.01338995857067512, -0.0049036098961597607, -0.063557031656031965},
    {1.7459469292875722, 0.43250189113917026, -0.073702420428464768, -0.038664662009572179, -0.013057872164876253, -0.11465634345789713},
    {-1.3227468718802662, 0.11580082662778401, 0.041281517146799049, -0.015363766219958977, 0.021822923093901408, -0.19213996908861847},
    {1.4239931883970023, 0.4506395704831757, -0.079188446865504789, -0.047856591596839686, -0.0029819746224447035, -0.18340698961979326},
    {-3.005892940492531, 0.02496859582903882, 0.12306371964978145, 0.064464137669749622, -0.068824786395750862, 0.021637839613903771},
    {-1.134988203711857, 0.14972304807182624, 0.024493055670372164, -0.021092497766080583, 0.019922378049682433, -0.233160254350119},
    {0.8138596465696537, 0.09083833964457466, -0.11203574462426745, -0.051819112037135712, -0.0018061581043930773, -0.33251283213999311},
    {-3.7518559573309656, 0.16335256771492113, 0.081887852156369623, 0.062006526239189279, -0.056465878870068362, 0.0022123797173879546},
    {-2.120696944007001, 0.15054938504457854, 0.092032335780439137, 0.024018037936643144, -0.023480635766676236, -0.032768496770619805},
    {-0.6794143080353168, 0.10505416549086988, -0.015085346932434152, -0.041290723528728306, 0.0051298038687620003, -0.32425322036983534},
    {3.7900799788408817, 0.3109025570937288, 0.044745550182128987, 0.047255159958647493, -0.043295872659622266, 0.0014825344854926088},
    {1.841414610360398, 0.18720169146576082, -0.090376542943677599, -0.035227669917153523, -0.0078954924926401427, -0.10354446560916684},
    {3.4840819817448727, 0.4198825619821078, 0.021527089231556558, 0.03658235406862631, -0.039952264608396237, 0.0074666657251323204},
    {-2.0273345198722934, 0.3554256858518987, 0.071253027877919539, 0.023247131061523162, -0.024913524888357588, -0.047350539941702879},
    {3.56060229224515, 0.2857110919746214, 0.0301192298761042, 0.04276425585847151, -0.04689984308504544, 0.0059929960315191818},
    {-1.0370419455254432, 0.18853823180671614, 0.015603162031031001, -0.021916788337376557, 0.017049659050132126, -0.25270965480940988},
    {2.6716055403899786, 0.2671087315346345, -0.035886632169848297, 0.0049517974635983992, -0.049104859746253525, 0.0094947595485267711},
    {3.4811923163320433, 0.34325246905858553, 0.023043676518726609, 0.038634403188498909, -0.044293753797184629, 0.0077721842614919372},
    {2.545686952162052, 0.33290502746302275, -0.041803109490236433, -0.0015670677700139091, -0.045631090236072709, 0.001597906690560694},
}};

}  // namespace oracle
