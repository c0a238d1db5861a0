# Config package initialization
