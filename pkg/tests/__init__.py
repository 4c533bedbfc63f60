# Pacote de testes do reebkit
