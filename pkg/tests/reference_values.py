"""Published values for the worked GF(17) two-variable example and the census examples."""

NAMES = ["x", "y"]

P_SMALL = "11xy+12x+10y+2"

PIJ = [
    ["xy+14x+9y+2", "5xy+10x+12y+6", "13xy+7x+15y+12"],
    ["16xy+13x+6y+11", "10xy+15x+7y+1", "12xy+4x+8y+4"],
    ["15xy+14x+12y+6", "10xy+x+8y+12", "4xy+2x+4y+3"],
]

P_BIG = (
    "7x^6y^5 + 15x^6y^4 + x^6y^3 + 2x^6y + 3x^5y^6 + 5x^5y^5 + 6x^5y^4 +12x^5y^3"
    " + 11x^5y^2 + 2x^5y + 3x^5 + 13x^4y^6 + 14x^4y^5+16x^4y^4 + 4x^4y^3 + 12x^4y^2"
    " + 15x^4y + x^4 + 10x^3y^6 +9x^3y^5 + 8x^3y^4 + 5x^3y^3 + 5x^3y^2+ 15x^3y + x^3"
    " + 12x^2y^6+ 12x^2y^5 + 7x^2y^4 + 3x^2y^2 + 16x^2y + 14x^2 + 5xy^6 +16xy^5"
    " + 6xy^4 + 11xy^3 + 15xy^2 + 3xy + 4x + 8y^6 + 2y^5 +13y^4+ 16y^3 + 13y^2 + 4y"
)
P_BIG_TERMS = 44
P_ZEROS = 45
GRID_COUNTS = {"mds": 90, "grs": 8, "nongrs": 82}
REFERENCE = (9, 9)

OMEGA_GF7_K4 = 390841
OMEGA_GF7_K3 = 894747
OMEGA_GF9_BLOCK = 24977

GF7_K4_MEMBERS = [
    [[4, 6], [5, 5], [5, 2], [4, 0]],
    [[3, 5], [4, 3], [2, 1], [6, 3]],
    [[1, 4], [1, 1], [3, 5], [0, 1]],
    [[3, 3], [0, 4], [1, 1], [4, 5]],
    [[6, 5], [1, 1], [6, 6], [0, 6]],
    [[0, 5], [5, 5], [3, 2], [1, 1]],
    [[1, 1], [6, 5], [4, 2], [6, 0]],
    [[0, 6], [6, 3], [2, 6], [2, 1]],
    [[3, 2], [3, 1], [4, 0], [4, 6]],
]
GF7_K3_MEMBERS = [
    [[2, 5, 3], [2, 1, 1], [3, 2, 2]],
    [[3, 4, 4], [0, 0, 3], [4, 0, 2]],
    [[5, 1, 6], [5, 2, 4], [3, 1, 0]],
    [[3, 2, 4], [2, 1, 3], [6, 0, 5]],
    [[1, 6, 6], [5, 0, 2], [5, 2, 4]],
]
GF9_BLOCK_MEMBERS = [
    "z^3,z^3,z^6,0,0; z^3,1,1,0,0; z^7,z,2,0,0",
    "z^3,1,z^2,0,0; z,z^6,z^3,0,0; z^2,z^2,z^7,0,0",
    "z^3,1,z^2,0,0; 1,z^6,z^3,0,0; 1,z^6,0,0,0",
    "2,0,z^6,0,0; 2,1,z^6,0,0; z^3,z,z,0,0",
]
