from artinpres.coxeter import CoxeterGraph, StandardType
from artinpres.garside import ArtinWord, normal_form
from artinpres.presentation import Presentation

__version__ = 0, 1, 0
